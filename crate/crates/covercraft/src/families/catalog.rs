//! The built-in family catalog.

use super::expr::dsl::*;
use super::expr::{Cond, Expr};
use super::{Density, DensityKind, Expansion, FamilyDescriptor};

impl FamilyDescriptor {
    fn new(id: &str, summary: &str, radius: Option<u32>, gamma: Expr) -> FamilyDescriptor {
        FamilyDescriptor {
            id: id.into(),
            summary: summary.into(),
            radius,
            expand: Expansion::None,
            bind: Default::default(),
            radius_cond: Cond::True,
            gamma,
            q_cond: Cond::True,
            r_cond: Cond::True,
            length: k(0),
            width: None,
            leading: k(0),
            density: None,
            builder: None,
        }
    }
    fn expand(mut self, e: Expansion, c: Cond) -> Self {
        self.expand = e;
        self.radius_cond = c;
        self
    }
    fn q(mut self, c: Cond) -> Self {
        self.q_cond = c;
        self
    }
    fn r(mut self, c: Cond) -> Self {
        self.r_cond = c;
        self
    }
    fn len(mut self, e: Expr, lead: Expr) -> Self {
        self.length = e;
        self.leading = lead;
        self
    }
    fn width(mut self, e: Expr) -> Self {
        self.width = Some(e);
        self
    }
    fn bound(mut self, e: Expr) -> Self {
        self.density = Some(Density { kind: DensityKind::Bound, expr: e });
        self
    }
    fn approx(mut self, e: Expr) -> Self {
        self.density = Some(Density { kind: DensityKind::Approx, expr: e });
        self
    }
    fn builder(mut self, b: &str) -> Self {
        self.builder = Some(b.into());
        self
    }
}

fn one() -> Expr {
    k(1)
}
fn t() -> Expr {
    var("t")
}
/// q^((r - shift)/R)
fn qt(shift: Expr) -> Expr {
    pw(q(), div(sub(r(), shift), big_r()))
}
/// q^(1/x)
fn root(x: Expr) -> Expr {
    pw(q(), div(one(), x))
}
/// a^R (q-1)^R / (R! q^R)
pub(crate) fn asym(a: Expr, radius: Expr) -> Expr {
    div(
        mul(vec![pw(a, radius.clone()), pw(sub(q(), one()), radius.clone())]),
        mul(vec![fact(radius.clone()), pw(q(), radius)]),
    )
}
/// R^R / R!
fn rr_fact() -> Expr {
    div(pw(big_r(), big_r()), fact(big_r()))
}
/// (q^((r - shift)/R) - 1)/(q - 1)
fn theta_t(shift: Expr) -> Expr {
    div(sub(qt(shift), one()), sub(q(), one()))
}
/// (x - 1)(x(x+1)/2 - 2) + x + 5 with q^(1/x) in place of q'.
fn n1(x: Expr) -> Expr {
    add(vec![
        mul(vec![
            sub(root(x.clone()), one()),
            sub(div(mul(vec![x.clone(), add(vec![x.clone(), one()])]), k(2)), k(2)),
        ]),
        x,
        k(5),
    ])
}
/// sum_{i=1}^{g+1} (q^(1/x) - 1)^(i-1) C(x+g, i)
fn ng(x: Expr, g: Expr) -> Expr {
    sum(
        "i",
        one(),
        add(vec![g.clone(), one()]),
        mul(vec![pw(sub(root(x.clone()), one()), sub(var("i"), one())), binom(add(vec![x, g]), var("i"))]),
    )
}
/// t = 1, or t >= 2 with q^(t-1) >= n0
fn t_gate(n0: Expr, extra: Vec<Cond>) -> Cond {
    let mut late = extra;
    late.push(ge(pw(q(), sub(t(), one())), n0));
    any(vec![eq(t(), one()), all(late)])
}

pub fn builtin() -> Vec<FamilyDescriptor> {
    let two = Some(2);
    let three = Some(3);
    let mut v = Vec::new();

    v.push(
        FamilyDescriptor::new("1.5", "direct sum of R Hamming codes of equal codimension", None, k(0))
            .expand(Expansion::Radius, ge(big_r(), one()))
            .r(ge(r(), big_r()))
            .len(
                mul(vec![big_r(), theta(div(r(), big_r()))]),
                div(mul(vec![big_r(), q()]), sub(q(), one())),
            )
            .approx(rr_fact())
            .builder("hamming-ds"),
    );

    v.push(
        FamilyDescriptor::new("6.5", "ternary, even codimension, doubled and cited short codes", two, k(0))
            .q(eq(q(), k(3)))
            .r(all(vec![ge(r(), k(4)), not(eq(r(), k(8)))]))
            .len(
                add(vec![
                    sub(mul(vec![fr(5, 2), qr(-2, 2)]), fr(1, 2)),
                    cases(vec![
                        (md(r(), 4, 2), k(0)),
                        (md(r(), 8, 4), sub(mul(vec![fr(1, 2), qr(0, 4)]), fr(1, 2))),
                        (md(r(), 8, 0), sub(mul(vec![fr(1, 2), qr(4, 4)]), fr(1, 2))),
                    ]),
                ]),
                fr(5, 2),
            )
            .approx(fr(25, 18))
            .builder("doubling-arc"),
    );

    v.push(
        FamilyDescriptor::new("6.6", "oval plus line starting codes, q >= 7", two, k(0))
            .q(all(vec![ge(q(), k(7)), not(eq(q(), k(9)))]))
            .r(ge(r(), k(4)))
            .len(
                add(vec![
                    mul(vec![k(2), qr(-2, 2)]),
                    qr(-4, 2),
                    cases(vec![(is(r(), &[8, 12]), add(vec![qr(-6, 2), qr(-8, 2)])), (tru(), k(0))]),
                ]),
                add(vec![k(2), div(one(), q())]),
            )
            .bound(add(vec![
                k(2),
                div(k(-2), q()),
                div(fr(-3, 2), pw(q(), k(2))),
                div(one(), pw(q(), k(3))),
                div(one(), pw(q(), k(4))),
            ])),
    );

    v.push(
        FamilyDescriptor::new("6.7", "even codimension for q = 4, 5, 9", two, k(0))
            .q(is(q(), &[4, 5, 9]))
            .r(all(vec![ge(r(), k(4)), not(all(vec![eq(q(), k(4)), is(r(), &[14, 20])]))]))
            .len(
                cases(vec![
                    (
                        eq(r(), k(8)),
                        add(vec![mul(vec![k(2), pw(q(), k(3))]), pw(q(), k(2)), mul(vec![k(2), q()]), k(2)]),
                    ),
                    (eq(r(), k(12)), add(vec![pw(q(), k(5)), theta(k(6))])),
                    (tru(), add(vec![mul(vec![k(2), qr(-2, 2)]), qr(-4, 2), floor(qr(-6, 2))])),
                ]),
                add(vec![k(2), div(one(), q()), div(one(), pw(q(), k(2)))]),
            )
            .bound(add(vec![
                k(2),
                div(k(-2), q()),
                div(fr(1, 2), pw(q(), k(2))),
                div(k(-2), pw(q(), k(3))),
                div(k(2), pw(q(), k(4))),
            ])),
    );

    v.push(
        FamilyDescriptor::new("6.9", "ternary, odd codimension, cited short codes", two, k(1))
            .q(eq(q(), k(3)))
            .r(all(vec![ge(r(), k(5)), not(eq(r(), k(7)))]))
            .len(
                add(vec![
                    sub(mul(vec![fr(5, 4), qf(1, 2), qr(-2, 2)]), fr(1, 4)),
                    cases(vec![
                        (md(r(), 4, 1), k(0)),
                        (md(r(), 8, 3), sub(mul(vec![fr(3, 4), qr(1, 4)]), fr(3, 4))),
                        (md(r(), 8, 7), sub(mul(vec![fr(3, 4), qr(5, 4)]), fr(3, 4))),
                    ]),
                ]),
                mul(vec![fr(5, 4), qf(1, 2)]),
            )
            .approx(fr(25, 24)),
    );

    v.push(
        FamilyDescriptor::new("6.10", "quaternary, odd codimension", two, k(1))
            .q(eq(q(), k(4)))
            .r(all(vec![ge(r(), k(5)), not(is(r(), &[7, 11, 13, 19]))]))
            .len(add(vec![mul(vec![k(2), qr(-2, 2)]), mul(vec![fr(3, 2), qr(-4, 2)])]), fr(19, 8))
            .approx(asym(fr(19, 8), k(2))),
    );

    v.push(
        FamilyDescriptor::new("6.11", "quinary, odd codimension, refers back to shorter codes", two, k(1))
            .q(eq(q(), k(5)))
            .r(all(vec![ge(r(), k(7)), not(eq(r(), k(9)))]))
            .len(
                add(vec![
                    mul(vec![qf(1, 2), qr(-2, 2)]),
                    cases(vec![
                        (md(r(), 4, 3), ell(div(sub(r(), one()), k(2)), 2)),
                        (
                            md(r(), 8, 5),
                            sub(
                                mul(vec![add(vec![ell(div(sub(r(), one()), k(4)), 2), fr(1, 4)]), qr(-1, 4)]),
                                fr(1, 4),
                            ),
                        ),
                        (
                            md(r(), 8, 1),
                            sub(
                                mul(vec![add(vec![ell(div(sub(r(), k(5)), k(4)), 2), fr(1, 2)]), qr(3, 4)]),
                                fr(1, 2),
                            ),
                        ),
                    ]),
                ]),
                qf(1, 2),
            )
            .approx(fr(8, 5)),
    );

    v.push(
        FamilyDescriptor::new("6.12", "square q, from two Baer subplanes", two, k(1))
            .q(all(vec![power_of(k(2)), ge(q(), k(16))]))
            .r(ge(r(), k(3)))
            .len(
                add(vec![mul(vec![sub(k(3), qf(-1, 2)), qr(-2, 2)]), floor(qr(-5, 2))]),
                add(vec![sub(k(3), qf(-1, 2)), qf(-3, 2)]),
            )
            .bound(add(vec![
                fr(9, 2),
                mul(vec![k(-3), qf(-1, 2)]),
                div(fr(-17, 2), q()),
                mul(vec![k(9), qf(-3, 2)]),
                div(fr(5, 2), pw(q(), k(2))),
            ])),
    );

    let c613 = add(vec![k(2), mul(vec![k(2), qf(-1, 4)]), mul(vec![k(2), qf(-1, 2)])]);
    v.push(
        FamilyDescriptor::new("6.13", "fourth-power q, from a 1-saturating set of the plane", two, k(1))
            .q(power_of(k(4)))
            .r(ge(r(), k(3)))
            .len(
                add(vec![mul(vec![c613.clone(), qr(-2, 2)]), floor(qr(-5, 2))]),
                add(vec![c613, qf(-3, 2)]),
            )
            .bound(add(vec![
                k(2),
                mul(vec![k(4), qf(-1, 4)]),
                mul(vec![k(6), qf(-1, 2)]),
                mul(vec![k(4), qf(-3, 4)]),
                div(k(-2), q()),
                mul(vec![k(-8), qf(-5, 4)]),
            ])),
    );

    let nq = ell(k(3), 2);
    let p0 = sub(nq.clone(), ind(has_d3(3, 2)));
    let big_p0 = lt(add(vec![q(), one()]), mul(vec![k(2), p0]));
    let special = add(vec![
        mul(vec![nq.clone(), qr(-3, 2)]),
        mul(vec![k(2), qr(-5, 2)]),
        qr(-7, 2),
        qr(-9, 2),
    ]);
    let a_q = mul(vec![nq.clone(), qf(-1, 2)]);
    v.push(
        FamilyDescriptor::new("6.14", "odd codimension from any short starting code with n < q", two, k(1))
            .q(all(vec![ge(q(), k(7)), has_entry(3, 2), lt(nq.clone(), q())]))
            .r(ge(r(), k(3)))
            .len(
                cases(vec![
                    (is(r(), &[9, 13]), special.clone()),
                    (
                        tru(),
                        add(vec![
                            mul(vec![nq.clone(), qr(-3, 2)]),
                            mul(vec![k(2), floor(qr(-5, 2))]),
                            mul(vec![ind(big_p0.clone()), floor(qr(-7, 2))]),
                        ]),
                    ),
                ]),
                add(vec![a_q.clone(), mul(vec![k(2), qf(-3, 2)]), mul(vec![ind(big_p0), qf(-5, 2)])]),
            )
            .approx(add(vec![
                div(pw(a_q.clone(), k(2)), k(2)),
                div(mul(vec![k(-1), pw(a_q.clone(), k(2))]), q()),
                mul(vec![k(2), a_q, qf(-3, 2)]),
            ])),
    );

    let c615 = add(vec![
        k(2),
        mul(vec![k(2), qf(-1, 6)]),
        mul(vec![k(2), qf(-1, 3)]),
        mul(vec![k(2), qf(-1, 2)]),
    ]);
    v.push(
        FamilyDescriptor::new("6.15", "sixth power of a small prime", two, k(1))
            .q(all(vec![prime_root(k(6)), le(qf(1, 6), k(73))]))
            .r(all(vec![ge(r(), k(3)), not(is(r(), &[9, 13]))]))
            .len(
                add(vec![mul(vec![c615.clone(), qr(-2, 2)]), mul(vec![k(2), floor(qr(-5, 2))])]),
                add(vec![c615, mul(vec![k(2), qf(-3, 2)])]),
            )
            .bound(add(vec![
                k(2),
                mul(vec![k(4), qf(-1, 6)]),
                mul(vec![k(6), qf(-1, 3)]),
                mul(vec![k(8), qf(-1, 2)]),
                mul(vec![k(6), qf(-2, 3)]),
                mul(vec![k(5), qf(-5, 6)]),
            ])),
    );

    let small = le(q(), k(13));
    v.push(
        FamilyDescriptor::new("6.16", "odd codimension from the stored plane tables", two, k(1))
            .q(all(vec![ge(q(), k(7)), le(q(), k(1217)), has_entry(3, 2)]))
            .r(ge(r(), k(3)))
            .len(
                cases(vec![
                    (is(r(), &[9, 13]), special),
                    (
                        tru(),
                        add(vec![
                            mul(vec![nq.clone(), qr(-3, 2)]),
                            mul(vec![k(2), floor(qr(-5, 2))]),
                            mul(vec![ind(small.clone()), floor(qr(-7, 2))]),
                        ]),
                    ),
                ]),
                add(vec![
                    mul(vec![nq.clone(), qf(-1, 2)]),
                    mul(vec![k(2), qf(-3, 2)]),
                    mul(vec![ind(small), qf(-5, 2)]),
                ]),
            )
            .bound(div(pw(nq, k(2)), mul(vec![k(2), q()]))),
    );

    v.push(
        FamilyDescriptor::new("7.1", "two ovals plus a line, single codimension", three, k(0))
            .q(ge(q(), k(4)))
            .r(eq(r(), k(6)))
            .len(add(vec![mul(vec![k(3), q()]), one()]), add(vec![k(3), div(one(), q())])),
    );

    v.push(
        FamilyDescriptor::new("7.2", "radius three, codimension divisible by three", three, k(0))
            .q(ge(q(), k(5)))
            .r(ge(r(), k(6)))
            .len(
                cases(vec![
                    (
                        all(vec![eq(r(), k(9)), is(q(), &[7, 8, 11, 13, 17, 19])]),
                        add(vec![mul(vec![k(3), pw(q(), k(2))]), mul(vec![k(2), q()]), one()]),
                    ),
                    (
                        all(vec![eq(r(), k(9)), is(q(), &[5, 9])]),
                        add(vec![mul(vec![k(3), pw(q(), k(2))]), mul(vec![k(2), q()]), k(2)]),
                    ),
                    (tru(), add(vec![mul(vec![k(3), qr(-3, 3)]), qr(-6, 3)])),
                ]),
                add(vec![k(3), div(one(), q())]),
            )
            .bound(add(vec![
                fr(9, 2),
                div(k(-9), q()),
                div(fr(3, 2), pw(q(), k(2))),
                div(fr(14, 3), pw(q(), k(3))),
                div(fr(-1, 2), pw(q(), k(4))),
            ])),
    );

    let seven_fourths = mul(vec![fr(7, 4), qf(2, 3)]);
    v.push(
        FamilyDescriptor::new("7.3", "ternary, radius three, direct sum with Hamming codes", three, k(1))
            .q(eq(q(), k(3)))
            .r(all(vec![ge(r(), k(7)), not(eq(r(), k(10)))]))
            .len(
                add(vec![
                    mul(vec![seven_fourths.clone(), qr(-3, 3)]),
                    cases(vec![
                        (md(r(), 6, 1), fr(-3, 4)),
                        (md(r(), 12, 4), sub(mul(vec![fr(3, 4), qr(2, 6)]), fr(3, 2))),
                        (md(r(), 12, 10), sub(mul(vec![fr(3, 4), qr(8, 6)]), fr(3, 2))),
                    ]),
                ]),
                seven_fourths.clone(),
            )
            .approx(asym(seven_fourths, k(3))),
    );

    let c74 = add(vec![k(9), mul(vec![k(-8), qf(-1, 3)]), mul(vec![k(4), qf(-2, 3)])]);
    v.push(
        FamilyDescriptor::new("7.4", "cube q, from the nine-planes set", three, k(2))
            .q(all(vec![power_of(k(3)), ge(q(), k(27))]))
            .r(ge(r(), k(8)))
            .len(mul(vec![c74.clone(), qr(-3, 3)]), c74)
            .bound(add(vec![fr(243, 2), mul(vec![k(-324), qf(-1, 3)]), mul(vec![k(72), qf(-2, 3)])]))
            .builder("nine-planes"),
    );

    let l43 = ell(k(4), 3);
    let th4 = div(sub(qr(-4, 3), one()), sub(q(), one()));
    let b_q = mul(vec![l43.clone(), qf(-1, 3)]);
    v.push(
        FamilyDescriptor::new("7.5", "radius three from the stored codimension-four table", three, k(1))
            .q(all(vec![ge(q(), k(7)), le(q(), k(563)), has_entry(4, 3)]))
            .r(ge(r(), k(4)))
            .len(
                add(vec![
                    mul(vec![l43, qr(-4, 3)]),
                    th4.clone(),
                    cases(vec![
                        (has_d3(4, 3), th4),
                        (tru(), ell(mul(vec![k(2), div(sub(r(), k(4)), k(3))]), 2)),
                    ]),
                ]),
                b_q.clone(),
            )
            .bound(div(pw(b_q, k(3)), k(6))),
    );

    let c76 = add(vec![k(4), mul(vec![k(4), qf(-1, 3)])]);
    v.push(
        FamilyDescriptor::new("7.6", "cube q, from four pairwise skew lines", three, k(1))
            .q(all(vec![power_of(k(3)), ge(q(), k(64))]))
            .r(ge(r(), k(7)))
            .len(mul(vec![c76.clone(), qr(-3, 3)]), c76)
            .bound(add(vec![
                fr(32, 3),
                mul(vec![k(32), qf(-1, 3)]),
                mul(vec![k(32), qf(-2, 3)]),
                div(fr(-64, 3), q()),
            ])),
    );

    let eleven_fourths = mul(vec![fr(11, 4), qf(1, 3)]);
    v.push(
        FamilyDescriptor::new("7.7", "ternary, radius three, codimension 2 mod 3", three, k(2))
            .q(eq(q(), k(3)))
            .r(all(vec![ge(r(), k(8)), not(eq(r(), k(11)))]))
            .len(
                add(vec![
                    mul(vec![eleven_fourths.clone(), qr(-3, 3)]),
                    cases(vec![
                        (md(r(), 6, 2), fr(-3, 4)),
                        (md(r(), 12, 5), sub(mul(vec![fr(3, 4), qr(1, 6)]), fr(3, 2))),
                        (md(r(), 12, 11), sub(mul(vec![fr(3, 4), qr(7, 6)]), fr(3, 2))),
                    ]),
                ]),
                eleven_fourths.clone(),
            )
            .approx(asym(eleven_fourths, k(3))),
    );

    let l53 = ell(k(5), 3);
    let th5 = div(sub(qr(-5, 3), one()), sub(q(), one()));
    let c_q = mul(vec![l53.clone(), qf(-2, 3)]);
    v.push(
        FamilyDescriptor::new("7.8", "radius three from the stored codimension-five table", three, k(2))
            .q(all(vec![ge(q(), k(3)), le(q(), k(43)), has_entry(5, 3)]))
            .r(all(vec![ge(r(), k(5)), not(eq(r(), k(8)))]))
            .len(
                add(vec![
                    mul(vec![l53, qr(-5, 3)]),
                    th5.clone(),
                    cases(vec![
                        (not(is(q(), &[2, 5, 19])), th5),
                        (tru(), ell(mul(vec![k(2), div(sub(r(), k(5)), k(3))]), 2)),
                    ]),
                ]),
                c_q.clone(),
            )
            .bound(div(pw(c_q, k(3)), k(6))),
    );

    let ceil3 = ceil(div(big_r(), k(3)));
    let g2 = cases(vec![
        (md(big_r(), 3, 0), k(0)),
        (md(big_r(), 3, 2), k(1)),
        (md(big_r(), 3, 1), k(2)),
    ]);
    v.push(
        FamilyDescriptor::new("8.1", "direct sums of oval-plus-line and two-ovals codes", None, k(0))
            .expand(Expansion::Radius, ge(big_r(), k(4)))
            .q(ge(q(), k(4)))
            .r(eq(r(), mul(vec![k(2), big_r()])))
            .len(
                add(vec![mul(vec![big_r(), q()]), ceil3.clone()]),
                add(vec![big_r(), div(ceil3.clone(), q())]),
            ),
    );

    v.push(
        FamilyDescriptor::new("8.2", "direct sums of radius two and three families", None, k(0))
            .expand(Expansion::Radius, ge(big_r(), k(4)))
            .q(all(vec![ge(q(), k(7)), not(eq(q(), k(9)))]))
            .r(all(vec![ge(t(), k(5)), not(eq(t(), k(6)))]))
            .len(
                add(vec![mul(vec![big_r(), qt(big_r())]), mul(vec![ceil3.clone(), qt(mul(vec![k(2), big_r()]))])]),
                add(vec![big_r(), div(ceil3.clone(), q())]),
            )
            .approx(rr_fact()),
    );

    v.push(
        FamilyDescriptor::new("8.3", "direct sums for q = 5, 9", None, k(0))
            .expand(Expansion::Radius, ge(big_r(), k(4)))
            .q(is(q(), &[5, 9]))
            .r(all(vec![ge(t(), k(2)), not(is(t(), &[3, 4, 6]))]))
            .len(
                add(vec![
                    mul(vec![big_r(), pw(q(), sub(t(), one()))]),
                    mul(vec![ceil3.clone(), pw(q(), sub(t(), k(2)))]),
                    mul(vec![g2.clone(), floor(pw(q(), sub(t(), k(3))))]),
                ]),
                add(vec![big_r(), div(ceil3, q()), div(g2, pw(q(), k(2)))]),
            )
            .approx(rr_fact()),
    );

    let n1r = n1(big_r());
    let shift1 = add(vec![big_r(), one()]);
    v.push(
        FamilyDescriptor::new("8.4", "q = (q')^R, codimension 1 mod R, Construction A chain", None, k(1))
            .expand(Expansion::Radius, ge(big_r(), k(4)))
            .q(power_of(big_r()))
            .r(t_gate(n1r.clone(), vec![ge(root(big_r()), k(3))]))
            .len(mul(vec![n1r.clone(), qt(shift1.clone())]), mul(vec![n1r, pw(q(), div(k(-1), big_r()))]))
            .width(cases(vec![(eq(root(big_r()), k(3)), theta_t(shift1)), (tru(), k(0))]))
            .approx(div(
                pw(add(vec![pw(big_r(), k(2)), big_r()]), big_r()),
                mul(vec![pw(k(2), big_r()), fact(big_r())]),
            ))
            .builder("construction-a"),
    );

    let g = var("g");
    let ngr = ng(big_r(), g.clone());
    let shift_g = add(vec![big_r(), g.clone()]);
    v.push(
        FamilyDescriptor::new("8.5", "q = (q')^R, codimension g mod R, bounded-weight points", None, g.clone())
            .expand(Expansion::RadiusGamma, ge(big_r(), k(4)))
            .q(power_of(big_r()))
            .r(t_gate(ngr.clone(), vec![]))
            .len(mul(vec![ngr.clone(), qt(shift_g.clone())]), mul(vec![ngr, pw(q(), div(mul(vec![k(-1), g.clone()]), big_r()))]))
            .width(mul(vec![sub(big_r(), k(3)), theta_t(shift_g)]))
            .approx(div(
                pw(div(pw(add(vec![big_r(), g.clone()]), sub(big_r(), one())), fact(sub(big_r(), one()))), big_r()),
                fact(big_r()),
            ))
            .builder("weight-bk"),
    );

    let half = div(big_r(), k(2));
    let even_r = vec![ge(big_r(), k(4)), md(big_r(), 2, 0)];
    let tail = floor(mul(vec![qf(-1, 2), qt(mul(vec![k(2), big_r()]))]));
    let c91 = mul(vec![half.clone(), sub(k(3), qf(-1, 2))]);
    v.push(
        FamilyDescriptor::new("9.1", "even R, copies of the square-q radius two family", None, half.clone())
            .expand(Expansion::Radius, all(even_r.clone()))
            .q(power_of(k(2)))
            .r(ge(t(), one()))
            .len(
                add(vec![mul(vec![c91.clone(), qt(big_r())]), mul(vec![half.clone(), tail.clone()])]),
                add(vec![c91, mul(vec![half.clone(), qf(-3, 2)])]),
            )
            .approx(mul(vec![rr_fact(), pw(fr(3, 2), big_r())])),
    );

    let c92 = mul(vec![big_r(), add(vec![one(), qf(-1, 4), qf(-1, 2)])]);
    v.push(
        FamilyDescriptor::new("9.2", "even R, copies of the fourth-power radius two family", None, half.clone())
            .expand(Expansion::Radius, all(even_r.clone()))
            .q(power_of(k(4)))
            .r(ge(t(), one()))
            .len(
                add(vec![mul(vec![c92.clone(), qt(big_r())]), mul(vec![half.clone(), tail.clone()])]),
                add(vec![c92, mul(vec![half.clone(), qf(-3, 2)])]),
            )
            .approx(rr_fact()),
    );

    let c93 = mul(vec![big_r(), add(vec![one(), qf(-1, 6), qf(-1, 3), qf(-1, 2)])]);
    v.push(
        FamilyDescriptor::new("9.3", "even R, copies of the sixth-power radius two family", None, half.clone())
            .expand(Expansion::Radius, all(even_r))
            .q(all(vec![prime_root(k(6)), le(qf(1, 6), k(73))]))
            .r(all(vec![ge(t(), one()), not(is(t(), &[4, 6]))]))
            .len(
                add(vec![mul(vec![c93.clone(), qt(big_r())]), mul(vec![big_r(), tail])]),
                add(vec![c93, mul(vec![big_r(), qf(-3, 2)])]),
            )
            .approx(rr_fact()),
    );

    let by3 = vec![ge(big_r(), k(6)), md(big_r(), 3, 0)];
    let c94 = mul(vec![div(mul(vec![k(4), big_r()]), k(3)), add(vec![one(), qf(-1, 3)])]);
    v.push(
        FamilyDescriptor::new("9.4", "R divisible by 3, copies of the skew-lines family", None, div(big_r(), k(3)))
            .expand(Expansion::Radius, all(by3.clone()))
            .q(all(vec![power_of(k(3)), ge(q(), k(64))]))
            .r(ge(t(), one()))
            .len(mul(vec![c94.clone(), qt(big_r())]), c94)
            .approx(mul(vec![rr_fact(), pw(fr(4, 3), big_r())])),
    );

    let c95 = mul(vec![
        div(big_r(), k(3)),
        add(vec![k(9), mul(vec![k(-8), qf(-1, 3)]), mul(vec![k(4), qf(-2, 3)])]),
    ]);
    v.push(
        FamilyDescriptor::new(
            "9.5",
            "R divisible by 3, copies of the nine-planes family",
            None,
            div(mul(vec![k(2), big_r()]), k(3)),
        )
        .expand(Expansion::Radius, all(by3))
        .q(all(vec![power_of(k(3)), ge(q(), k(27))]))
        .r(ge(t(), one()))
        .len(mul(vec![c95.clone(), qt(big_r())]), c95)
        .approx(mul(vec![rr_fact(), pw(k(3), big_r())])),
    );

    let rp = var("Rp");
    let s = var("s");
    let n1p = n1(rp.clone());
    let shift_s = add(vec![big_r(), s.clone()]);
    v.push(
        FamilyDescriptor::new("9.6", "R = s R', s copies of the codimension 1 mod R' family", None, s.clone())
            .expand(Expansion::Divisor, ge(rp.clone(), k(4)))
            .q(power_of(rp.clone()))
            .r(t_gate(n1p.clone(), vec![ge(root(rp.clone()), k(3))]))
            .len(
                mul(vec![s.clone(), n1p.clone(), qt(shift_s.clone())]),
                mul(vec![s.clone(), n1p, pw(q(), div(mul(vec![k(-1), s.clone()]), big_r()))]),
            )
            .width(cases(vec![
                (eq(root(rp.clone()), k(3)), mul(vec![s.clone(), theta_t(shift_s)])),
                (tru(), k(0)),
            ]))
            .approx(mul(vec![rr_fact(), pw(div(add(vec![rp.clone(), one()]), k(2)), big_r())])),
    );

    let sg = mul(vec![s.clone(), g.clone()]);
    let ngp = ng(rp.clone(), g.clone());
    let shift_sg = add(vec![big_r(), sg.clone()]);
    v.push(
        FamilyDescriptor::new("9.7", "R = s R', s copies of a codimension g mod R' family", None, sg.clone())
            .expand(Expansion::DivisorGamma, ge(rp.clone(), k(4)))
            .q(power_of(rp.clone()))
            .r(t_gate(ngp.clone(), vec![]))
            .len(
                mul(vec![s.clone(), ngp.clone(), qt(shift_sg.clone())]),
                mul(vec![s, ngp, pw(q(), div(mul(vec![k(-1), sg]), big_r()))]),
            )
            .width(mul(vec![sub(big_r(), k(3)), theta_t(shift_sg)]))
            .approx(mul(vec![
                rr_fact(),
                pw(div(pw(add(vec![rp.clone(), g]), sub(rp.clone(), one())), fact(rp)), big_r()),
            ])),
    );

    v
}
