use mck_core::lgp::{check_lfc, check_local_convexity_data, lgp_verdict, LgpParams};
use mck_core::scenes::{builtin_scene, discretize_scene, DiscretizeParams};

fn main() {
    let scene = builtin_scene("cylinder").unwrap();
    for (n, k) in [(1500usize, 8usize), (3000, 10)] {
        for seed in [1u64, 7, 13, 29] {
            let params = DiscretizeParams { n_points: n, k, seed, eps: None, truncation: None };
            let space = discretize_scene(&scene, &params).unwrap();
            let lfc = check_lfc(&space, 1).unwrap().len();
            let lcd = check_local_convexity_data(&space, 1, None).unwrap();
            let v = lgp_verdict(&space, &LgpParams::default()).unwrap();
            println!(
                "n={n} k={k} seed={seed}: lfc={lfc} lcd_ok={} (c={} vn={} slo={}) fib={} open={} conv={} consistent={}",
                lcd.ok(), lcd.containment_failures.len(), lcd.vn_failures.len(), lcd.slo_failures.len(),
                v.conclusions.fibers_connected, v.conclusions.open_onto_image,
                v.conclusions.image_convex, v.consistent
            );
        }
    }
}
