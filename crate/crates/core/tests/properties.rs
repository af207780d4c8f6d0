//! Property tests over random negative-definite graphs with at most two nodes.

use num_traits::Signed;
use proptest::prelude::*;

use plumbsw_core::closed::ClosedForm;
use plumbsw_core::graph::{seifert_to_graph, two_node_to_graph};
use plumbsw_core::lens::{cf_expand, cf_value, LensData};
use plumbsw_core::rational::{q, qr};
use plumbsw_core::seifert::Seifert;
use plumbsw_core::series::{sw_from_counting, sw_table, TruncatedSeries, DEFAULT_BUDGET};
use plumbsw_core::{Lattice, LatticeVector, PlumbingGraph};

const MAX_DET: i128 = 60;
const MAX_VERTICES: usize = 9;

fn pair() -> impl Strategy<Value = (i128, i128)> {
    (2i128..=5, 1i128..5).prop_filter_map("coprime pair", |(a, w)| {
        (w < a && num_integer::gcd(a, w) == 1).then_some((a, w))
    })
}

fn star() -> impl Strategy<Value = PlumbingGraph> {
    (-3i64..=-1, prop::collection::vec(pair(), 3..=4))
        .prop_filter_map("negative definite, small det", |(b, legs)| small(seifert_to_graph(b, &legs).ok()?))
}

fn two_node() -> impl Strategy<Value = PlumbingGraph> {
    let chain = prop_oneof![Just(vec![]), Just(vec![-2]), Just(vec![-3]), Just(vec![-2, -2])];
    (-3i64..=-1, prop::collection::vec(pair(), 2), chain, -3i64..=-1, prop::collection::vec(pair(), 2))
        .prop_filter_map("negative definite, small det", |(b, legs, chain, bt, legs_t)| {
            small(two_node_to_graph(b, &legs, &chain, bt, &legs_t).ok()?)
        })
}

fn chain() -> impl Strategy<Value = PlumbingGraph> {
    (2i128..=12, 1i128..12).prop_filter_map("lens", |(p, q_)| {
        (q_ < p && num_integer::gcd(p, q_) == 1).then(|| LensData::new(p, q_).unwrap().graph())
    })
}

fn small(g: PlumbingGraph) -> Option<PlumbingGraph> {
    (g.len() <= MAX_VERTICES && Lattice::new(&g).det() <= MAX_DET).then_some(g)
}

fn any_graph() -> impl Strategy<Value = PlumbingGraph> {
    prop_oneof![chain(), star(), two_node()]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn lattice_identities(g in any_graph()) {
        let lat = Lattice::new(&g);
        let n = lat.rank();
        for v in 0..n {
            for w in 0..n {
                let s = (0..n).fold(q(0), |acc, k| acc + q(lat.form()[v][k]) * lat.inverse()[k][w]);
                prop_assert_eq!(s, if v == w { q(1) } else { q(0) });
                prop_assert!((-lat.inverse()[v][w]).is_positive());
            }
        }
        prop_assert_eq!(lat.k2_plus_v(), lat.k2_plus_v_from_valencies());
        prop_assert_eq!(lat.group().invariant_factors().iter().product::<i128>(), lat.det());
        for h in lat.classes() {
            let (r, s) = (lat.r_h(&h), lat.s_h(&h));
            prop_assert_eq!(lat.class_of(&r), Some(h.clone()));
            prop_assert_eq!(lat.class_of(&s), Some(h.clone()));
            let d = &s - &r;
            prop_assert!(d.is_integral() && d.geq(&lat.zero()));
            prop_assert!(lat.chi(&s) <= lat.chi(&r));
            prop_assert!(lat.in_lipman_cone(&s));
        }
    }

    #[test]
    fn star_invariants(g in star()) {
        let sf = Seifert::new(&g).unwrap();
        let d = &sf.data;
        let prod: i128 = d.legs.iter().map(|l| l.alpha).product();
        prop_assert_eq!(q(sf.lat.det()), q(prod) * -d.e);
        for h in sf.lat.classes() {
            let lift = sf.lift(&h);
            let pc = d.pc(&lift).unwrap();
            prop_assert_eq!(d.pc(&d.shift_e0(&lift, 2)).unwrap(), pc);
            prop_assert_eq!(d.pc(&d.shift_relation(&lift, 0, -1)).unwrap(), pc);
            let ct = d.c_tilde(&lift);
            for l in -5..30 {
                prop_assert!(q(d.n_c(&lift, l)) <= q(1) + (q(l) + ct) * -d.e);
            }
            let (r, s) = (sf.lat.r_h(&h), sf.lat.s_h(&h));
            let window = q(sf.window_sum(&h));
            prop_assert_eq!(window, sf.lat.chi(&r) - sf.lat.chi(&s));
            let ks = sf.lat.canonical_class() + &(&s * q(2));
            let norm_s = (sf.lat.pair(&ks, &ks) + q(sf.lat.rank() as i128)) / q(8);
            prop_assert_eq!(q(pc) - window, -sf.sw(&sf.lat.group().neg(&h)).unwrap() - norm_s);
        }
    }

    #[test]
    fn closed_forms_match_the_oracle(g in prop_oneof![star(), two_node()]) {
        let lat = Lattice::new(&g);
        let cf = ClosedForm::new(&g).unwrap();
        prop_assert_eq!(cf.sw_table(&lat).unwrap(), sw_table(&lat, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn oracle_ignores_padding(g in prop_oneof![chain(), star()], k in 0usize..60) {
        let lat = Lattice::new(&g);
        let classes = lat.classes();
        let h = &classes[k % classes.len()];
        prop_assert_eq!(
            sw_from_counting(&lat, h, 0, DEFAULT_BUDGET).unwrap(),
            sw_from_counting(&lat, h, 1, DEFAULT_BUDGET).unwrap()
        );
    }

    #[test]
    fn series_support_and_reduction(g in prop_oneof![star(), two_node()], lam in prop::collection::vec(0i128..=2, 2)) {
        let lat = Lattice::new(&g);
        let nodes = g.nodes();
        let bound = nodes.iter().fold(lat.zero(), |acc, &v| &acc + &(lat.e_star(v) * q(3)));
        let full = TruncatedSeries::expand(&lat, &bound, DEFAULT_BUDGET).unwrap();
        for (exp, _, c) in full.terms() {
            prop_assert!(c != 0);
            prop_assert!(lat.in_lipman_cone(&LatticeVector(exp)));
        }
        let red = full.reduce_to_nodes(&lat);
        let order = lat.group().order() as usize;
        let x = nodes.iter().zip(&lam).fold(lat.zero(), |acc, (&v, &c)| &acc + &(lat.e_star(v) * q(c)));
        let xn: Vec<_> = nodes.iter().map(|&v| x.0[v]).collect();
        prop_assert_eq!(full.counting(&x.0, order).unwrap(), red.counting(&xn, order).unwrap());
    }
}

#[test]
fn continued_fractions_round_trip() {
    for p in 1..=40i128 {
        for q_ in 1..p {
            if num_integer::gcd(p, q_) == 1 {
                assert_eq!(cf_value(&cf_expand(p, q_).unwrap()), qr(p, q_));
            }
        }
    }
}

#[test]
fn lens_sweep() {
    for p in 2..=25i128 {
        for q_ in (1..p).filter(|&x| num_integer::gcd(p, x) == 1) {
            let d = LensData::new(p, q_).unwrap();
            let lat = Lattice::new(&d.graph());
            let gs = lat.class_of_e_star(d.s() - 1);
            let mut total = q(0);
            for a in 0..p {
                let h = lat.group().scale(&gs, a);
                assert_eq!(lat.chi(&lat.r_h(&h)), lat.chi(&lat.s_h(&h)));
                total += lat.chi(&lat.r_h(&h));
            }
            assert_eq!(total, d.sum_chi_r());
            assert_eq!(lat.k2_plus_v(), d.k2v());
        }
    }
}
