use qshare::learning::*;
use std::time::Instant;

fn main() {
    let coder = TileCoder::new(8, 0.5, 4, 1 << 20);
    let mut qf = QFunction::tile_linear(5, coder);
    let mut traces = EligibilityTraces::new();
    let states: Vec<(Observation, StateKey)> = (0..100)
        .map(|i| {
            let v = vec![
                ((i % 13) as f64 - 6.0) / 7.0,
                ((i % 11) as f64 - 5.0) / 7.0,
                ((i % 7) as f64 - 3.0) / 7.0,
                ((i % 5) as f64 - 2.0) / 7.0,
            ];
            let o = Observation::new(v);
            let k = StateKey::from_observation(&o, 7);
            (o, k)
        })
        .collect();

    let n = 1_000_000u64;
    let t0 = Instant::now();
    for i in 0..n {
        let (o, k) = &states[(i % 100) as usize];
        let s = StateView { obs: o, key: k };
        traces.decay_then_bump(&mut qf, &s, (i % 5) as usize, 0.81);
    }
    let d1 = t0.elapsed();
    println!("decay_then_bump: {:?}/call", d1 / n as u32);

    let t0 = Instant::now();
    for i in 0..n {
        traces.apply(&mut qf, 1e-9 * (i as f64));
    }
    println!("apply: {:?}/call", t0.elapsed() / n as u32);

    let t0 = Instant::now();
    let mut acc = 0.0;
    for i in 0..n {
        let (o, k) = &states[(i % 100) as usize];
        let s = StateView { obs: o, key: k };
        acc += qf.row(&s)[0];
    }
    println!("row: {:?}/call (acc {acc})", t0.elapsed() / n as u32);
}
