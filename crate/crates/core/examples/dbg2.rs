use adscone::connections::*;
use adscone::lorentz::*;
use rand::SeedableRng;
fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for k in 0..30 {
        let g = random_so22(&mut rng);
        let h = random_so22(&mut rng);
        let gh = g.compose(&h);
        let x0 = AdsPoint::base();
        let y = gh.apply(&x0);
        let c = -bilinear22(x0.pos(), y.pos());
        let r = split_isometry(&gh);
        if r.is_err() {
            println!("{k}: c = {c:.6} FAIL y = {:?}", y.pos());
        }
    }
    println!("done");
}
