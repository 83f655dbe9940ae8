//! The three instance generators.

use cyclepack::generate::{gen_complete, gen_random_mindeg, gen_sharpness, SharpnessLayout};

fn main() {
    let k = gen_complete(4).unwrap();
    println!("K_4,4: {} edges", k.edge_count());

    for seed in 0..3 {
        let g = gen_random_mindeg(8, 8, 5, seed).unwrap();
        println!("random 8+8 seed {seed}: {} edges, min degree {}", g.edge_count(), g.min_degree().unwrap());
    }

    let (g, prof) = gen_sharpness(2).unwrap();
    let layout = SharpnessLayout::new(2);
    println!(
        "sharpness k=2: {} vertices, min degree {}, profile {prof} needs {}",
        g.order(),
        g.min_degree().unwrap(),
        prof.degree_threshold()
    );
    println!("  u = {}, v = {}, X1 = {:?}, Y2 = {:?}", layout.u, layout.v, layout.x1, layout.y2);
}
