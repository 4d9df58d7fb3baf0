fn main() {
    let seed = 20240806u64;
    for trials in [1usize, 2, 3, 4, 5, 6] {
        let t0 = std::time::Instant::now();
        let r = convexmod::verify::criterion_6_slice_identity(trials, seed);
        eprintln!("trials={} elapsed={:?} ok={}", trials, t0.elapsed(), r.is_ok());
    }
}
