//! Closed forms for the degenerate families and the `t → 1⁻` limits.

use num_complex::Complex64;

use super::{check_t, guard_all, step, Lattice};
use crate::error::{Error, Result};
use crate::math::c;
use crate::polys::{Angle, MuParams, ParamSet};
use crate::qcore::{inf_ratio, QBase, TruncationPolicy};
use crate::qseries::{eval_phi, eval_w, sum_terms, PhiSpec};

const REL: f64 = 1e-12;

fn tied(lhs: f64, rhs: f64, invariant: &str) -> Result<()> {
    if (lhs - rhs).abs() > REL * lhs.abs().max(rhs.abs()) {
        return Err(Error::constraint(invariant));
    }
    Ok(())
}

fn sized<const N: usize>(p: &ParamSet, name: &'static str) -> Result<[f64; N]> {
    if p.len() != N {
        return Err(Error::InvalidParameter { name, invariant: alloc::format!("exactly {N} parameters") });
    }
    let mut out = [0.0; N];
    out.copy_from_slice(p.values());
    Ok(out)
}

fn same_q(a: &ParamSet, b: &ParamSet) -> Result<QBase> {
    if a.q() != b.q() {
        return Err(Error::InvalidParameter { name: "q", invariant: "both parameter sets share q".into() });
    }
    Ok(a.q())
}

fn negative(items: &[(&'static str, Complex64)], q: QBase) -> Result<()> {
    let mut v = alloc::vec::Vec::with_capacity(items.len());
    v.extend(items.iter().map(|&(n, z)| (n, z, Lattice::Negative)));
    guard_all(&v, q)
}

fn inf(num: &[Complex64], den: &[Complex64], q: QBase) -> Result<Complex64> {
    inf_ratio(num, den, q, &TruncationPolicy::default())
}

fn phi(num: &[Complex64], den: &[Complex64], z: Complex64, q: QBase) -> Result<Complex64> {
    Ok(eval_phi(&PhiSpec::new(num.to_vec(), den.to_vec(), z, q), &TruncationPolicy::default())?.value)
}

fn w(a: Complex64, bs: &[Complex64], z: Complex64, q: QBase) -> Result<Complex64> {
    Ok(eval_w(a, bs, z, q, &TruncationPolicy::default())?.value)
}

/// `(a e^{±iθ} e^{±iφ})`: the four sign combinations.
fn quad(s: Complex64, e: Complex64, ep: Complex64) -> [Complex64; 4] {
    [s * e * ep, s * e / ep, s * ep / e, s / (e * ep)]
}

/// The `t → 1⁻` kernel for `βγ = bc`, `|β| < |b|`.
pub fn kernel_unity(x: &Angle, y: &Angle, lambda: &ParamSet, mu: &MuParams) -> Result<Complex64> {
    mu.check_unity(lambda)?;
    let q = lambda.q();
    let [a, b, cc, d] = lambda.quartet()?;
    let [al, be, _, _] = mu.params().quartet()?;
    let (e, ep) = (x.e(), y.e());
    let r = be / b;
    let qd = quad(c(r), e, ep);
    negative(&[("αβ", c(al * be)), ("ac", c(a * cc)), ("ad", c(a * d)), ("bc", c(b * cc)), ("bd", c(b * d)), ("cd", c(cc * d))], q)?;
    negative(&[("βe^{iθ}e^{iφ}/b", qd[0]), ("βe^{iθ}e^{-iφ}/b", qd[1]), ("βe^{-iθ}e^{iφ}/b", qd[2]), ("βe^{-iθ}e^{-iφ}/b", qd[3])], q)?;
    let p = inf(&[c(a * b * cc * d)], &[c(al * be), c(a * cc), c(a * d), c(b * cc), c(b * d), c(cc * d)], q)?;
    Ok(p * inf(&[ep * al, al / ep, ep * be, be / ep, e * cc, cc / e, e * d, d / e, c(r * r)], &qd, q)?)
}

fn dual_qhahn_check(lam: &ParamSet, mu: &ParamSet) -> Result<([f64; 3], [f64; 3], QBase)> {
    let q = same_q(lam, mu)?;
    let l = sized::<3>(lam, "lambda")?;
    let m = sized::<3>(mu, "mu")?;
    tied(m[0] * m[2], l[0] * l[2], "αγ = ac")?;
    Ok((l, m, q))
}

/// Continuous dual q-Hahn kernel: a double sum of `8W7` series.
pub fn dual_qhahn_kernel(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet, t: Complex64) -> Result<Complex64> {
    check_t(t)?;
    let ([a, b, cc], [al, be, ga], q) = dual_qhahn_check(lam, mu)?;
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let qq = q.get();
    let (e, ep) = (x.e(), y.e());
    let cap = t * (cc / ga);
    let c2 = cap * cap;
    let qd = quad(cap, e, ep);
    negative(
        &[
            ("αβ", c(al * be)),
            ("ac", c(a * cc)),
            ("bc", c(b * cc)),
            ("αC²e^{iφ}", c2 * ep * al),
            ("C²", c2),
            ("cCe^{iφ}", cap * ep * cc),
            ("αte^{iφ}", t * ep * al),
            ("bCe^{-iφ}", cap * b / ep),
            ("αCe^{iθ}", cap * e * al),
            ("αCe^{-iθ}", cap * al / e),
            ("C e^{iθ}e^{iφ}", qd[0]),
            ("C e^{iθ}e^{-iφ}", qd[1]),
            ("C e^{-iθ}e^{iφ}", qd[2]),
            ("C e^{-iθ}e^{-iφ}", qd[3]),
        ],
        q,
    )?;
    let pref = inf(&[c2, cap * e * al, cap * al / e], &[c(al * be), c(a * cc), c(b * cc), c2 * ep * al], q)?
        * inf(&[ep * be, cap * b / ep, ga / ep, cap * ep * cc, t * ep * al], &qd, q)?;
    let kn = [t, qd[0], qd[1], qd[2], qd[3]];
    let kd = [c(qq), cap * ep * cc, t * ep * al, cap * b / ep, cap * e * al, cap * al / e];
    let policy = TruncationPolicy::default();
    let mut ck = c(1.0);
    let outer = sum_terms(&policy, |k| {
        let ki = k as i64;
        if k > 0 {
            let j = ki - 1;
            let (q2a, q2b) = (q.pow(2 * j), q.pow(2 * j + 1));
            ck *= step(&kn, &kd, q.pow(j)) * (-b * cc * q.pow(j));
            ck *= (c(1.0) - c2 * ep * (al * q2a)) * (c(1.0) - c2 * ep * (al * q2b)) / ((c(1.0) - c2 * q2a) * (c(1.0) - c2 * q2b));
        }
        let qk = q.pow(ki);
        let cq = cap * qk;
        let ln = [al / ep, cq * b / be, c2 * (qk * qk * al) * ep, cq * e / ep, cq / (e * ep)];
        let ld = [c(qq), cq * b / ep, c2 * (qk * qk), cq * e * al, cq * al / e];
        let mut cl = c(1.0);
        let mut ql = 1.0;
        let sl = sum_terms(&policy, |_| {
            let wa = c2 * (qk * qk * ql / qq * al) * ep;
            let bs = [cq * e * ep, cq * ep / e, ep * al, t * (al * qk * ql / ga), cap * (cc * qk * ql / ga)];
            let v = cl * w(wa, &bs, ga / ep, q)?;
            cl *= step(&ln, &ld, ql) * ep * be;
            ql *= qq;
            Ok(v)
        })?;
        Ok(ck * sl.value)
    })?;
    Ok(pref * outer.value)
}

/// The `t → 1⁻` limit of [`dual_qhahn_kernel`] for `βγ = bc`, `c ≠ γ`.
pub fn dual_qhahn_kernel_unity(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet) -> Result<Complex64> {
    let ([a, b, cc], [al, be, ga], q) = dual_qhahn_check(lam, mu)?;
    tied(be * ga, b * cc, "βγ = bc")?;
    if (cc - ga).abs() <= REL * cc.abs() {
        return Err(Error::constraint("c ≠ γ"));
    }
    let (e, ep) = (x.e(), y.e());
    let qd = quad(c(cc / ga), e, ep);
    negative(
        &[
            ("αβ", c(al * be)),
            ("ac", c(a * cc)),
            ("bc", c(b * cc)),
            ("ce^{iθ}e^{iφ}/γ", qd[0]),
            ("ce^{iθ}e^{-iφ}/γ", qd[1]),
            ("ce^{-iθ}e^{iφ}/γ", qd[2]),
            ("ce^{-iθ}e^{-iφ}/γ", qd[3]),
        ],
        q,
    )?;
    let r = cc / ga;
    inf(&[ep * al, al / ep, ep * be, be / ep, e * cc, cc / e, c(r * r)], &[c(al * be), c(a * cc), c(b * cc), qd[0], qd[1], qd[2], qd[3]], q)
}

fn asc_check(lam: &ParamSet, mu: &ParamSet) -> Result<([f64; 2], [f64; 2], QBase)> {
    let q = same_q(lam, mu)?;
    let l = sized::<2>(lam, "lambda")?;
    let m = sized::<2>(mu, "mu")?;
    tied(m[0] * m[1], l[0] * l[1], "αβ = ab")?;
    Ok((l, m, q))
}

/// Al-Salam-Chihara kernel with weight `(ab;q)_n/(q;q)_n (t/a²)^n`: one `8W7`.
pub fn asc_kernel(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet, t: Complex64) -> Result<Complex64> {
    check_t(t)?;
    let ([a, b], [al, be], q) = asc_check(lam, mu)?;
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let (e, ep) = (x.e(), y.e());
    let s = t * (al / a);
    let qd = quad(s, e, ep);
    let den = [c(a * b), s * s * e * a, qd[0], qd[1], qd[2], qd[3]];
    negative(
        &[
            ("ab", den[0]),
            ("α²t²e^{iθ}/a", den[1]),
            ("αte^{iθ}e^{iφ}/a", qd[0]),
            ("αte^{iθ}e^{-iφ}/a", qd[1]),
            ("αte^{-iθ}e^{iφ}/a", qd[2]),
            ("αte^{-iθ}e^{-iφ}/a", qd[3]),
        ],
        q,
    )?;
    let pref = inf(&[s * s, b / e, s * e * al, t * e * b, t * ep * al, t * al / ep], &den, q)?;
    Ok(pref * w(s * s * e * (a / q.get()), &[t, t * (al / be), e * a, qd[0], qd[1]], b / e, q)?)
}

/// The `t → 1⁻` limit of [`asc_kernel`].
pub fn asc_kernel_unity(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet) -> Result<Complex64> {
    let ([a, b], [al, _], q) = asc_check(lam, mu)?;
    let (e, ep) = (x.e(), y.e());
    let qd = quad(c(al / a), e, ep);
    negative(
        &[
            ("ab", c(a * b)),
            ("αe^{iθ}e^{iφ}/a", qd[0]),
            ("αe^{iθ}e^{-iφ}/a", qd[1]),
            ("αe^{-iθ}e^{iφ}/a", qd[2]),
            ("αe^{-iθ}e^{-iφ}/a", qd[3]),
        ],
        q,
    )?;
    let r = al / a;
    inf(&[e * b, b / e, ep * al, al / ep, c(r * r)], &[c(a * b), qd[0], qd[1], qd[2], qd[3]], q)
}

/// Al-Salam-Chihara kernel with weight `t^n/(q, ab;q)_n`, first `8W7` form.
pub fn asc_kernel_norm(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet, t: Complex64) -> Result<Complex64> {
    check_t(t)?;
    let ([a, b], [al, be], q) = asc_check(lam, mu)?;
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let (e, ep) = (x.e(), y.e());
    let qd = quad(t, e, ep);
    let den = [c(a * b), t * t * e * a, qd[0], qd[1], qd[2], qd[3]];
    negative(
        &[
            ("ab", den[0]),
            ("at²e^{iθ}", den[1]),
            ("te^{iθ}e^{iφ}", qd[0]),
            ("te^{iθ}e^{-iφ}", qd[1]),
            ("te^{-iθ}e^{iφ}", qd[2]),
            ("te^{-iθ}e^{-iφ}", qd[3]),
        ],
        q,
    )?;
    let pref = inf(&[t * t, b / e, t * e * al, t * e * be, t * ep * a, t * a / ep], &den, q)?;
    Ok(pref * w(t * t * e * (a / q.get()), &[t * (al / b), t * (be / b), e * a, qd[0], qd[1]], b / e, q)?)
}

/// Second `8W7` form of [`asc_kernel_norm`].
pub fn asc_kernel_norm_alt(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet, t: Complex64) -> Result<Complex64> {
    check_t(t)?;
    let ([a, b], [al, be], q) = asc_check(lam, mu)?;
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let (e, ep) = (x.e(), y.e());
    let qd = quad(t, e, ep);
    let den = [t * (al * a), qd[0], qd[1], qd[2], qd[3]];
    negative(
        &[("αat", den[0]), ("te^{iθ}e^{iφ}", qd[0]), ("te^{iθ}e^{-iφ}", qd[1]), ("te^{-iθ}e^{iφ}", qd[2]), ("te^{-iθ}e^{-iφ}", qd[3])],
        q,
    )?;
    let pref = inf(&[t * (be / a), t * e * al, t * al / e, t * ep * a, t * a / ep], &den, q)?;
    Ok(pref * w(t * (al * a / q.get()), &[t * (al / b), e * a, a / e, ep * al, al / ep], t * (be / a), q)?)
}

/// Big q-Hermite kernel with weight `(t/a²)^n/(q;q)_n`: one `3φ2`.
pub fn bigqh_kernel(x: &Angle, y: &Angle, a: f64, alpha: f64, q: QBase, t: Complex64) -> Result<Complex64> {
    check_t(t)?;
    ParamSet::new(&[a], q)?;
    ParamSet::new(&[alpha], q)?;
    if a == 0.0 {
        return Err(Error::InvalidParameter { name: "a", invariant: "a != 0".into() });
    }
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let (e, ep) = (x.e(), y.e());
    let s = t * (alpha / a);
    let qd = quad(s, e, ep);
    negative(
        &[
            ("α²t²/a²", s * s),
            ("αte^{iφ}", t * ep * alpha),
            ("αte^{iθ}e^{iφ}/a", qd[0]),
            ("αte^{iθ}e^{-iφ}/a", qd[1]),
            ("αte^{-iθ}e^{iφ}/a", qd[2]),
            ("αte^{-iθ}e^{-iφ}/a", qd[3]),
        ],
        q,
    )?;
    let pref = inf(&[s * s, t * ep * alpha, alpha / ep], &qd, q)?;
    Ok(pref * phi(&[t, qd[0], qd[2]], &[s * s, t * ep * alpha], alpha / ep, q)?)
}

/// Big q-Hermite kernel with weight `t^n/(q;q)_n`; `a = 0` allowed.
pub fn bigqh_kernel_norm(x: &Angle, y: &Angle, a: f64, alpha: f64, q: QBase, t: Complex64) -> Result<Complex64> {
    check_t(t)?;
    ParamSet::new(&[a, alpha], q)?;
    if alpha == 0.0 {
        return Err(Error::InvalidParameter { name: "alpha", invariant: "α != 0".into() });
    }
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let (e, ep) = (x.e(), y.e());
    let qd = quad(t, e, ep);
    negative(
        &[
            ("t²", t * t),
            ("ate^{iφ}", t * ep * a),
            ("te^{iθ}e^{iφ}", qd[0]),
            ("te^{iθ}e^{-iφ}", qd[1]),
            ("te^{-iθ}e^{iφ}", qd[2]),
            ("te^{-iθ}e^{-iφ}", qd[3]),
        ],
        q,
    )?;
    let pref = inf(&[t * t, t * ep * a, alpha / ep], &qd, q)?;
    Ok(pref * phi(&[t * (a / alpha), qd[0], qd[2]], &[t * t, t * ep * a], alpha / ep, q)?)
}

/// q-Hermite / q-Bessel kernel: a `2φ1`.
pub fn qhermite_qbessel_kernel(x: &Angle, y: &Angle, alpha: f64, q: QBase, t: Complex64) -> Result<Complex64> {
    check_t(t)?;
    ParamSet::new(&[alpha], q)?;
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let (e, ep) = (x.e(), y.e());
    let qd = quad(t, e, ep);
    negative(
        &[("t²", t * t), ("te^{iθ}e^{iφ}", qd[0]), ("te^{iθ}e^{-iφ}", qd[1]), ("te^{-iθ}e^{iφ}", qd[2]), ("te^{-iθ}e^{-iφ}", qd[3])],
        q,
    )?;
    let pref = inf(&[t * t, alpha / ep], &qd, q)?;
    Ok(pref * phi(&[qd[0], qd[2]], &[t * t], alpha / ep, q)?)
}

/// Which angle sets the argument `α e^{-i·}` of [`j_t`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum JtArgument {
    #[default]
    Theta,
    Phi,
}

/// `2φ1(t e^{iθ+iφ}, t e^{iθ-iφ}; t²; q, α e^{-i·})`.
pub fn j_t(x: &Angle, y: &Angle, alpha: f64, q: QBase, t: Complex64, arg: JtArgument) -> Result<Complex64> {
    check_t(t)?;
    ParamSet::new(&[alpha], q)?;
    if t == c(0.0) {
        return Ok(c(1.0));
    }
    let (e, ep) = (x.e(), y.e());
    negative(&[("t²", t * t)], q)?;
    let z = match arg {
        JtArgument::Theta => alpha / e,
        JtArgument::Phi => alpha / ep,
    };
    phi(&[t * e * ep, t * e / ep], &[t * t], z, q)
}
