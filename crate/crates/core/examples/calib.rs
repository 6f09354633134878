use adscone::connections::*;
use adscone::lorentz::*;
use rand::SeedableRng;

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    // inverse_split round trip + homomorphism margin over more pairs
    let mut worst_inv = 0.0f64;
    let mut worst_hom = 0.0f64;
    for _ in 0..30 {
        let g = random_so22(&mut rng);
        let h = random_so22(&mut rng);
        let sg = split_isometry(&g).unwrap();
        let sh = split_isometry(&h).unwrap();
        let sgh = split_isometry(&g.compose(&h)).unwrap();
        let dl = (sgh.left.matrix() - (sg.left.compose(&sh.left)).matrix()).norm();
        let dr = (sgh.right.matrix() - (sg.right.compose(&sh.right)).matrix()).norm();
        worst_hom = worst_hom.max(dl).max(dr);
        let lifts = inverse_split(&sg).unwrap();
        let d = (lifts[0] - g.matrix()).norm().min((lifts[1] - g.matrix()).norm());
        worst_inv = worst_inv.max(d);
    }
    println!("worst homomorphism dev over 30 pairs: {worst_hom:.3e}");
    println!("worst inverse_split dev: {worst_inv:.3e}");

    // curvature signs
    let x = AdsPoint::base();
    let fr = base_frame();
    let u = AdsTangent { base: x, v: fr[1] };
    let v = AdsTangent { base: x, v: fr[2] };
    let w = AdsTangent { base: x, v: fr[1] };
    let r_fd = curvature_residual(ConnectionKind::LeviCivita, &x, &u, &v, &w);
    let cf = closed_form_curvature(&u.v, &v.v, &w.v);
    println!("LC fd  = [{:.6}, {:.6}, {:.6}, {:.6}]", r_fd.v[0], r_fd.v[1], r_fd.v[2], r_fd.v[3]);
    println!("   cf  = [{:.6}, {:.6}, {:.6}, {:.6}]", cf[0], cf[1], cf[2], cf[3]);
    println!("   |fd-cf| = {:.3e}  |fd+cf| = {:.3e}", (r_fd.v - cf).norm(), (r_fd.v + cf).norm());
    for kind in [ConnectionKind::Left, ConnectionKind::Right] {
        let r = curvature_residual(kind, &x, &u, &v, &w);
        println!("{kind:?} residual = {:.3e}", r.v.norm());
    }
    // u = v exact zero?
    let r_uu = curvature_residual(ConnectionKind::Left, &x, &u, &u, &w);
    println!("u=v residual = {:.3e}", r_uu.v.norm());

    // is_diagonal_conjugate on rotations fixing x0
    let p1 = split_isometry(&SpacetimeIsometry::rotation_23(0.7)).unwrap();
    let p2 = split_isometry(&SpacetimeIsometry::rotation_23(1.3)).unwrap();
    match is_diagonal_conjugate(&[p1, p2]).unwrap() {
        Some((pt, d)) => println!("diag conj: fixed {:?} disp {:.2e}", pt.pos(), d),
        None => println!("diag conj: none found"),
    }
}
