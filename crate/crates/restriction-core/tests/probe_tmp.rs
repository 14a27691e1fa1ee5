use restriction_core::circle::CircleFunction;
use restriction_core::grid::PlaneGrid;
use restriction_core::trilinear::trilinear_result;

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn probe() {
    let mut state = 42u64;
    let t16 = PlaneGrid::zeros(16.0, 16.0, 129, 129).unwrap();
    let t40 = PlaneGrid::zeros(40.0, 40.0, 321, 321).unwrap();
    let (mut w16, mut w40, mut d16, mut d40) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..60 {
        let coeffs: Vec<f64> = (0..6).map(|_| 1.6 * splitmix(&mut state) - 0.8).collect();
        let f = CircleFunction::from_real_fn(64, |th| {
            let mut s = 0.0;
            for (k, pair) in coeffs.chunks(2).enumerate() {
                let m = (k + 1) as f64;
                s += pair[0] * (m * th).cos() + pair[1] * (m * th).sin();
            }
            s.exp()
        })
        .unwrap();
        let f = f.scaled(1.0 / f.l2_norm());
        for (tmpl, wmax, dmax) in [(&t16, &mut w16, &mut d16), (&t40, &mut w40, &mut d40)] {
            let r = trilinear_result(&f, tmpl).unwrap();
            let lower = r.fourier_value - r.truncation_bound;
            let dist = (lower - r.direct_value).max(r.direct_value - r.fourier_value).max(0.0);
            *wmax = wmax.max(r.truncation_bound / r.direct_value);
            *dmax = dmax.max(dist / r.direct_value);
        }
    }
    println!("window16: max width frac {w16:.4}  max interval dist {d16:.4}");
    println!("window40: max width frac {w40:.4}  max interval dist {d40:.4}");
}
