use relguess::field::PrimeField;
use relguess::fglm::*;
use relguess::structures::GDegreeMap;
use std::time::Instant;

fn main() {
    let f = PrimeField::new((1u64 << 31) - 1).unwrap();
    // 12 towers, heights multiples of 6 summing to 900
    let heights: Vec<u32> = vec![138, 114, 102, 90, 78, 72, 66, 60, 54, 48, 42, 36];
    assert_eq!(heights.iter().sum::<u32>(), 900);
    let g6 = GDegreeMap::cyclic(6, vec![1, 1]).unwrap();
    let m = synth::tower_matrix(&f, &heights, Some(&g6), 5).unwrap();
    println!("D = {}, k = {}", m.dim(), m.dense_count());
    let mut prev_basis = None;
    for q in [1u32, 2, 3, 6] {
        let g = GDegreeMap::cyclic(q, vec![1 % q, 1 % q]).unwrap();
        let t = Instant::now();
        match blocked_speedup_bench(&f, &m, &g, 7) {
            Ok((rep, basis)) => {
                println!(
                    "q={q}: seq plain {:>8.1}ms blocked {:>8.1}ms | solve plain {:>8.1}ms blocked {:>8.1}ms | total {:.1}s",
                    rep.seq_gen_plain.as_secs_f64() * 1e3,
                    rep.seq_gen_blocked.as_secs_f64() * 1e3,
                    rep.solve_plain.as_secs_f64() * 1e3,
                    rep.solve_blocked.as_secs_f64() * 1e3,
                    t.elapsed().as_secs_f64()
                );
                if let Some(p) = &prev_basis {
                    assert_eq!(p, &basis, "bases differ between group views");
                }
                prev_basis = Some(basis);
            }
            Err(e) => println!("q={q}: ERR {e}"),
        }
    }
}
