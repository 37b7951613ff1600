use std::f64::consts::PI;

use ergokit::gaussian::{self, GaussianState, IsoFamilyGaussian};
use ergokit::linalg::C64;
use ergokit::open_system::{self, BathSpec};
use ergokit::states::{self, HamiltonianSpec};
use ergokit::tls::{self, IsoFamilyTls, TlsState};
use proptest::prelude::*;

fn tls_state() -> impl Strategy<Value = TlsState> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..4.0 * PI, 0.1..3.0f64).prop_map(|(p, frac, theta, omega)| {
        TlsState::new(p, frac * 2.0 * (p * (1.0 - p)).sqrt(), theta, omega).unwrap()
    })
}

proptest! {
    #[test]
    fn tls_split_sums_to_brute_force(s in tls_state()) {
        let brute = states::ergotropy(&s.to_density(), &HamiltonianSpec::qubit(s.omega)).unwrap();
        let r = s.ergotropy();
        prop_assert!((r.component_sum() - brute).abs() < 1e-10);
        prop_assert!(r.component("coherent").unwrap() >= -1e-15);
    }

    #[test]
    fn tls_round_trips_through_density(s in tls_state()) {
        let back = TlsState::from_density(&s.to_density(), s.omega).unwrap();
        prop_assert!(back.to_density().trace_distance(&s.to_density()).unwrap() < 1e-10);
    }

    #[test]
    fn tls_family_members_share_charge(pb in 0.501..1.0f64, frac in 0.0..=1.0f64, theta in 0.0..4.0 * PI) {
        let fam = IsoFamilyTls::new(pb, 1.0).unwrap();
        let p = fam.pure_population() + frac * (pb - fam.pure_population());
        let s = tls::family_member(&fam, p, theta).unwrap();
        prop_assert!((s.ergotropy().total - fam.charge()).abs() < 1e-12);
    }

    #[test]
    fn gaussian_moments_round_trip(mu_abs in 0.0..3.0f64, arg in -PI..PI, xi in 0.0..1.5f64, phi in -PI..PI, n in 0.0..2.0f64) {
        let s = GaussianState::new(C64::from_polar(mu_abs, arg), xi, phi, n, 1.0).unwrap();
        let back = gaussian::from_moments(&s.to_moments(), 1.0).unwrap();
        prop_assert!((back.ergotropy().total - s.ergotropy().total).abs() < 1e-9 * (1.0 + s.ergotropy().total));
        prop_assert!((back.n_thermal - n).abs() < 1e-9);
    }

    #[test]
    fn gaussian_family_members_share_charge(mu_sq in 0.1..10.0f64, n in 0.0..2.0f64, frac in 0.0..=1.0f64) {
        let fam = IsoFamilyGaussian::new(mu_sq, 1.0).unwrap();
        let s = gaussian::family_member(&fam, frac * fam.boundary_xi(n), PI, n, 0.0).unwrap();
        prop_assert!((s.ergotropy().total - mu_sq).abs() < 1e-12 * (1.0 + mu_sq));
    }

    #[test]
    fn decay_never_increases_ergotropy(s in tls_state(), n_bar in 0.0..0.5f64, t in 0.0..5.0f64, dt in 0.0..1.0f64) {
        let bath = BathSpec::fermionic(1.0, n_bar).unwrap();
        let a = open_system::tls_decay(&s, &bath, t).unwrap().ergotropy().total;
        let b = open_system::tls_decay(&s, &bath, t + dt).unwrap().ergotropy().total;
        prop_assert!(b <= a + 1e-12);
    }

    #[test]
    fn gaussian_decay_stays_physical(mu_abs in 0.0..3.0f64, xi in 0.0..1.5f64, n in 0.0..2.0f64, n_bar in 0.0..2.0f64, t in 0.0..10.0f64) {
        let s = GaussianState::new(C64::new(mu_abs, 0.0), xi, 0.3, n, 1.0).unwrap();
        let out = open_system::gaussian_decay(&s, &BathSpec::new(0.8, n_bar).unwrap(), t).unwrap();
        prop_assert!(out.to_moments().validate().is_ok());
        prop_assert!(out.ergotropy().total <= s.ergotropy().total + 1e-9);
    }
}
