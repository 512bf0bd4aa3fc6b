use proptest::prelude::*;
use tjurina::invariants::{analyze, check_mu_tau_vs_bs, BsVerdict};
use tjurina::{Germ, Rational};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Brieskorn-Pham germs: μ = Π(aᵢ - 1), quasi-homogeneous with weights 1/aᵢ.
    #[test]
    fn brieskorn_pham(exps in prop::collection::vec(2u32..6, 1..4)) {
        let names = ["x", "y", "z"];
        let vars = names[..exps.len()].join(",");
        let text = exps.iter().zip(names).map(|(a, v)| format!("{v}^{a}")).collect::<Vec<_>>().join(" + ");
        let r = analyze(&Germ::parse(&text, &vars).unwrap()).unwrap().report;
        let mu: u32 = exps.iter().map(|a| a - 1).product();
        prop_assert_eq!((r.mu, r.tau, r.nu1, r.ebs), (mu as usize, mu as usize, 0, 1));
        let w: Vec<Rational> = exps.iter().map(|&a| Rational::new(1.into(), a.into())).collect();
        prop_assert_eq!(r.qh_weights.as_ref(), Some(&w));
        let alpha: Rational = w.iter().sum();
        prop_assert_eq!(r.alpha_min.as_ref(), Some(&alpha));
        prop_assert_eq!(check_mu_tau_vs_bs(&r).unwrap(), BsVerdict::EqualityCase);
    }
}

#[test]
fn simple_singularities() {
    let cases = [
        ("x^2 + y^5", 4),
        ("x^2*y + y^6", 7),
        ("x^3 + y^4", 6),
        ("x^3 + x*y^3", 7),
        ("x^3 + y^5", 8),
    ];
    for (text, mu) in cases {
        let r = analyze(&Germ::parse(text, "x,y").unwrap()).unwrap().report;
        assert_eq!((r.mu, r.tau), (mu, mu), "{text}");
    }
}

#[test]
fn kernel_of_f_has_dimension_tau() {
    for (text, vars) in [("y^4 - x^5 + x^3*y^2", "x,y"), ("x^3 + y^3 + z^4 + x*y*z", "x,y,z")] {
        let a = analyze(&Germ::parse(text, vars).unwrap()).unwrap();
        let d = &a.decomposition;
        assert_eq!(d.ker.dim(), a.report.tau, "{text}");
        assert_eq!(d.a.dim(), d.nu1);
        assert_eq!(d.b.dim() + d.nu1, a.report.mu - a.report.tau);
    }
}
