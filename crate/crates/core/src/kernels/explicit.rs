//! The explicit three-part form `K = K1 + K2 + K3` of the nonsymmetric Askey-Wilson Poisson kernel.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::{guard_all, idem, step, KernelParams, KernelValue, Lattice};
use crate::error::Result;
use crate::math::c;
use crate::polys::Angle;
use crate::qcore::{inf_ratio, QBase, TruncationPolicy};
use crate::qseries::{eval_phi, eval_w, sum_terms, sum_terms_after, PhiSpec};

const OUTER_CAP: usize = 1000;
const INNER_CAP: usize = 4000;

struct Ctx {
    q: QBase,
    qq: f64,
    sq: f64,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    al: f64,
    be: f64,
    ga: f64,
    de: f64,
    eps: Complex64,
    t: Complex64,
    e: Complex64,
    ep: Complex64,
    policy: TruncationPolicy,
}

impl Ctx {
    fn outer(&self) -> TruncationPolicy {
        TruncationPolicy { max_terms: self.policy.max_terms.min(OUTER_CAP), ..self.policy }
    }
    fn inner(&self) -> TruncationPolicy {
        TruncationPolicy { max_terms: self.policy.max_terms.min(INNER_CAP), ..self.policy }
    }
    fn inf(&self, num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
        inf_ratio(num, den, self.q, &self.policy)
    }
}

/// `M_ℓ`: the finite `m`-sum of `8W7` series shared by `K1` and `K2`.
struct MCache {
    vals: Vec<Complex64>,
}

impl MCache {
    fn get(&mut self, cx: &Ctx, l: usize) -> Result<Complex64> {
        while self.vals.len() <= l {
            let next = m_ell(cx, self.vals.len())?;
            self.vals.push(next);
        }
        Ok(self.vals[l])
    }
}

fn m_ell(cx: &Ctx, l: usize) -> Result<Complex64> {
    let (q, qq) = (cx.q, cx.qq);
    let (a, b, cc, d, al, be, de) = (cx.a, cx.b, cx.c, cx.d, cx.al, cx.be, cx.de);
    let (e, ep) = (cx.e, cx.ep);
    let li = l as i64;
    let ql = q.pow(-li);
    let q1l = q.pow(1 - li);
    let num = [c(de * ql / al), c(q1l / (al * be)), c(b * q1l / (al * be * cc)), c(ql), ep * de, de / ep, e * d, d / e];
    let den = [
        c(qq),
        c(be * de),
        c(cc * d),
        c(qq * de / al),
        q1l / (ep * al),
        ep * (q1l / al),
        b * q1l / (e * al * be),
        e * (b * q1l / (al * be)),
    ];
    let wp0 = 1.0 - de * ql / al;
    let ratio = b * cc * qq / (al * de);
    let wa = c(al * be * cc * d * q.pow(li - 1) / b) / e;
    let mut term = c(1.0);
    let mut s = c(0.0);
    let mut qm = 1.0;
    for m in 0..=l {
        let mi = m as i64;
        let bs = [cc / e, d * qm / e, c(al * be * q.pow(li - mi) / b) / e, c(cc * d * q.pow(li)), c(al * be / (a * b))];
        let w = eval_w(wa, &bs, e * a, q, &cx.policy)?.value;
        s += term * ((1.0 - de * q.pow(2 * mi - li) / al) / wp0) * w;
        term *= step(&num, &den, qm) * ratio;
        qm *= qq;
    }
    Ok(s)
}

fn k1(cx: &Ctx, mc: &mut MCache) -> Result<(Complex64, usize)> {
    let (q, qq, sq) = (cx.q, cx.qq, cx.sq);
    let (a, b, cc, d, al, be, de) = (cx.a, cx.b, cx.c, cx.d, cx.al, cx.be, cx.de);
    let (eps, t, e, ep) = (cx.eps, cx.t, cx.e, cx.ep);
    let ad = a * d;
    let e2 = eps * eps;
    let fixed_num = [-eps, c(ad), ep * al, al / ep, e * (al * be / b), c(al * be / b) / e, c(al * be * cc * d / b) / e];
    let fixed_den = [c(al * be), c(al * de), c(al / de), c(al * be * d / b), c(al * be * cc / b), e2 / (e * b)];
    if t == c(0.0) {
        let pref = cx.inf(
            &[c(al * be * cc / b), c(al * be * d / b), e * a, e2 / (e * b)],
            &[c(a * cc), c(ad), e * (al * be / b), c(al * be * cc * d / b) / e],
        )?;
        return Ok((pref * mc.get(cx, 0)?, 1));
    }
    let pref = (1.0 - t * t)
        * cx.inf(
            &[-t * eps * qq, c(al * be * cc / b), c(al * be * d / b), e * a, e2 / (e * b)],
            &[-t / eps, c(a * cc), c(ad), e * (al * be / b), c(al * be * cc * d / b) / e],
        )?;
    let kn = [eps, eps * sq, -eps * sq, -eps / ad];
    let kd = [c(qq), c(b * cc), -t * eps * qq, -eps * qq / t];
    let mut ck = c(1.0);
    let outer = sum_terms(&cx.outer(), |k| {
        if k > 0 {
            ck *= step(&kn, &kd, q.pow(k as i64 - 1)) * qq;
        }
        let qk = q.pow(-(k as i64));
        let mut num = vec![c(qk)];
        num.extend_from_slice(&fixed_num);
        let mut den = vec![c(qq), -(ad * q.pow(1 - k as i64)) / eps];
        den.extend_from_slice(&fixed_den);
        let mut cl = c(1.0);
        let mut sl = c(0.0);
        let mut ql = 1.0;
        for l in 0..=k {
            sl += cl * mc.get(cx, l)?;
            cl *= step(&num, &den, ql) * qq;
            ql *= qq;
        }
        Ok(ck * sl)
    })?;
    Ok((pref * outer.value, outer.terms_used))
}

fn k2(cx: &Ctx, mc: &mut MCache) -> Result<(Complex64, usize)> {
    let (q, qq, sq) = (cx.q, cx.qq, cx.sq);
    let (a, b, cc, d, al, be, de) = (cx.a, cx.b, cx.c, cx.d, cx.al, cx.be, cx.de);
    let (eps, t, e, ep) = (cx.eps, cx.t, cx.e, cx.ep);
    let ad = a * d;
    let e2 = eps * eps;
    let pref = cx.inf(
        &[e2, -eps / ad, t, -t * eps / ad, c(al * be * cc / b), c(al * be * d / b), e * a, e2 / (e * b)],
        &[-eps, c(b * cc), t / ad, -eps / t, c(a * cc), c(ad), e * (al * be / b), c(al * be * cc * d / b) / e],
    )?;
    let fixed_num = [-eps, c(ad), ep * al, al / ep, e * (al * be / b), c(al * be / b) / e, c(al * be * cc * d / b) / e];
    let fixed_den = [c(al * be), c(al * de), c(al / de), c(al * be * cc / b), c(al * be * d / b), e2 / (e * b)];
    let kn = [-t, t * sq, -t * sq, t / ad];
    let kd = [c(qq), t * t * qq, -t * eps / ad, -t * qq / eps];
    let inner = cx.inner();
    let mut ck = c(1.0);
    let outer = sum_terms(&cx.outer(), |k| {
        if k > 0 {
            ck *= step(&kn, &kd, q.pow(k as i64 - 1)) * qq;
        }
        let mut num = vec![-eps * q.pow(-(k as i64)) / t];
        num.extend_from_slice(&fixed_num);
        let mut den = vec![c(qq), ad * q.pow(1 - k as i64) / t];
        den.extend_from_slice(&fixed_den);
        let mut cl = c(1.0);
        let mut ql = 1.0;
        let sl = sum_terms_after(&inner, k + 1, |l| {
            let v = cl * mc.get(cx, l)?;
            cl *= step(&num, &den, ql) * qq;
            ql *= qq;
            Ok(v)
        })?;
        Ok(ck * sl.value)
    })?;
    Ok((pref * outer.value, outer.terms_used))
}

fn k3_half(cx: &Ctx, e: Complex64) -> Result<(Complex64, usize)> {
    let (q, qq, sq) = (cx.q, cx.qq, cx.sq);
    let (a, b, cc, d, al, be, ga, de) = (cx.a, cx.b, cx.c, cx.d, cx.al, cx.be, cx.ga, cx.de);
    let (eps, t, ep) = (cx.eps, cx.t, cx.ep);
    let ad = a * d;
    let e2 = eps * eps;
    let ct = t * (cc / ga);
    let pref = cx.inf(
        &[e2, a / e, cc / e, d / e, e * (al * be / b)],
        &[c(a * cc), c(b * cc), c(cc * d), c(al * be), ad / t, t * (b * cc * de / ga)],
    )? * cx.inf(&[t * e * cc, ct * e * de, ct * ep * b, ct * b / ep], &[c(1.0) / (e * e), ct * e * ep, ct * e / ep])?;
    let kn = [t, -eps / ad, -t * eps / ad, t * (b * cc * de / ga), ct * e * ep, ct * e / ep];
    let kd = [c(qq), t * qq / ad, t * e * cc, ct * e * de, ct * ep * b, ct * b / ep];
    let inner = cx.inner();
    let mut ck = c(1.0);
    let outer = sum_terms(&cx.outer(), |k| {
        let ki = k as i64;
        if k > 0 {
            ck *= step(&kn, &kd, q.pow(ki - 1)) * qq;
        }
        let qk = q.pow(ki);
        let spec =
            PhiSpec::new(vec![c(q.pow(-ki)), -t, t * sq, -t * sq], vec![t * t * qq, -t * eps / ad, -(ad * q.pow(1 - ki)) / eps], c(qq), q);
        let f43 = eval_phi(&spec, &cx.policy)?.value;
        let num = [ct * qk * e * ep, ct * qk * e / ep, e * a, e * cc, e * d];
        let den = [t * (cc * qk) * e, ct * qk * e * de, e * (al * be / b), e * e * qq, c(qq)];
        let wa = t * (b * cc * de * q.pow(ki - 1) / ga);
        let wb1 = t * (b * cc * qk / (be * ga));
        let wb2 = t * (b * cc * qk / (al * ga));
        let mut cl = c(1.0);
        let mut ql = 1.0;
        let sl = sum_terms_after(&inner, 1, |l| {
            let bs = [wb1, wb2, c(b * q.pow(-(l as i64))) / e, ep * de, de / ep];
            let w = eval_w(wa, &bs, e * (al * be * ql / b), q, &cx.policy)?.value;
            let v = cl * w;
            cl *= step(&num, &den, ql) * qq;
            ql *= qq;
            Ok(v)
        })?;
        Ok(ck * f43 * sl.value)
    })?;
    Ok((pref * outer.value, outer.terms_used))
}

fn guards(cx: &Ctx) -> Result<()> {
    let (a, b, cc, d, al, be, ga, de) = (cx.a, cx.b, cx.c, cx.d, cx.al, cx.be, cx.ga, cx.de);
    let (eps, t, e, ep) = (cx.eps, cx.t, cx.e, cx.ep);
    let ad = a * d;
    use Lattice::*;
    let mut items = vec![
        ("ac", c(a * cc), Negative),
        ("ad", c(ad), Negative),
        ("bc", c(b * cc), Negative),
        ("cd", c(cc * d), Negative),
        ("αβ", c(al * be), Negative),
        ("αδ", c(al * de), Negative),
        ("βδ", c(be * de), Negative),
        ("α/δ", c(al / de), Negative),
        ("δ/α", c(de / al), Positive),
        ("αβc/b", c(al * be * cc / b), Negative),
        ("αβd/b", c(al * be * d / b), Negative),
        ("αβe/b", e * (al * be / b), Negative),
        ("αβe^{-1}/b", c(al * be / b) / e, Negative),
        ("αβcd e^{-1}/b", c(al * be * cc * d / b) / e, Negative),
        ("ε²e^{-1}/b", eps * eps / (e * b), Negative),
        ("e^{iφ}/α", ep / al, Positive),
        ("e^{-iφ}/α", c(1.0) / (ep * al), Positive),
        ("b e^{iθ}/(αβ)", e * (b / (al * be)), Positive),
        ("b e^{-iθ}/(αβ)", c(b / (al * be)) / e, Positive),
        ("-ε", -eps, Negative),
        ("-ad/ε", -ad / eps, Positive),
        ("e^{-2iθ}", c(1.0) / (e * e), Negative),
        ("e^{2iθ}", e * e, Negative),
    ];
    if t != c(0.0) {
        items.extend_from_slice(&[
            ("-t/ε", -t / eps, Negative),
            ("-ε/t", -eps / t, Negative),
            ("-qtε", -t * eps * cx.qq, Negative),
            ("qt²", t * t * cx.qq, Negative),
            ("-tε/(ad)", -t * eps / ad, Negative),
            ("ad/t", ad / t, Both),
            ("qt/(ad)", t * cx.qq / ad, Negative),
            ("bcδt/γ", t * (b * cc * de / ga), Negative),
            ("cte^{iθ}", t * e * cc, Negative),
            ("cte^{-iθ}", t * cc / e, Negative),
        ]);
    }
    guard_all(&items, cx.q)
}

/// `K1 + K2 + K3`, each a nested series evaluated to the default truncation policy.
pub fn kernel_explicit(x: &Angle, y: &Angle, kp: &KernelParams) -> Result<KernelValue> {
    kernel_explicit_with(x, y, kp, &TruncationPolicy::default())
}

/// [`kernel_explicit`] under an explicit policy.
pub fn kernel_explicit_with(x: &Angle, y: &Angle, kp: &KernelParams, policy: &TruncationPolicy) -> Result<KernelValue> {
    let q = kp.q();
    let [a, b, cc, d] = kp.lambda().quartet()?;
    let [al, be, ga, de] = kp.mu().quartet()?;
    let cx = Ctx {
        q,
        qq: q.get(),
        sq: q.sqrt(),
        a,
        b,
        c: cc,
        d,
        al,
        be,
        ga,
        de,
        eps: kp.eps(),
        t: kp.t(),
        e: x.e(),
        ep: y.e(),
        policy: *policy,
    };
    guards(&cx)?;
    let mut mc = MCache { vals: Vec::new() };
    let (p1, n1) = k1(&cx, &mut mc)?;
    if cx.t == c(0.0) {
        let zero = c(0.0);
        return Ok(KernelValue { value: p1 + zero + zero, parts: Some([p1, zero, zero]), terms: vec![n1, 0, 0] });
    }
    let (p2, n2) = k2(&cx, &mut mc)?;
    let mut n3 = 0;
    let p3 = idem(cx.e, |e| {
        let (v, n) = k3_half(&cx, e)?;
        n3 = n3.max(n);
        Ok(v)
    })?;
    Ok(KernelValue { value: p1 + p2 + p3, parts: Some([p1, p2, p3]), terms: vec![n1, n2, n3] })
}
