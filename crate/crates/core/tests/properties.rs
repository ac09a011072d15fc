use hyperchrom::chromatic::{assemble_coloring, edge_color_bipartite, verify_coloring};
use hyperchrom::flow::{check_cut, check_flow, feasible_circulation, Circulation, FlowNetwork};
use hyperchrom::lp::solve_relaxation;
use hyperchrom::model::io::{parse_instance, parse_solution, serialize_instance, serialize_solution};
use hyperchrom::model::{saturate, validate_solution, HypergraphSolution, Instance};
use hyperchrom::oracle::{brute_force_ilp, Caps};
use hyperchrom::rounding::{complete_at, solve_pipeline};
use hyperchrom::scalar::{int, to_i64, ExactScalar};
use proptest::prelude::*;

fn instance(max_m: usize, max_n: usize, bmax: i64, amax: i64) -> impl Strategy<Value = Instance> {
    (2..=max_m)
        .prop_flat_map(move |m| (Just(m), 1..m, m..=max_n.max(m)))
        .prop_flat_map(move |(m, m1, n)| {
            (
                Just(m1),
                Just(m),
                prop::collection::vec(prop::collection::vec(0..=bmax, m), n),
                prop::collection::vec([0..=amax, 0..=amax], n),
            )
        })
        .prop_map(|(m1, m, b, a)| Instance {
            jobs: (1..=b.len()).map(|j| format!("J{j}")).collect(),
            group1: (1..=m1).map(|h| format!("M{h}")).collect(),
            group2: (m1 + 1..=m).map(|h| format!("M{h}")).collect(),
            b,
            a,
        })
}

/// Reverses the job order, each group's machine order, and optionally swaps
/// the two groups.
fn relabel(inst: &Instance, swap: bool) -> Instance {
    let m1 = inst.group1.len();
    let mut cols: Vec<usize> = (0..m1).rev().collect();
    let mut g2: Vec<usize> = (m1..inst.m()).rev().collect();
    let (mut group1, mut group2): (Vec<String>, Vec<String>) =
        (inst.group1.iter().rev().cloned().collect(), inst.group2.iter().rev().cloned().collect());
    if swap {
        std::mem::swap(&mut cols, &mut g2);
        std::mem::swap(&mut group1, &mut group2);
    }
    cols.extend(g2);
    Instance {
        jobs: inst.jobs.iter().rev().cloned().collect(),
        group1,
        group2,
        b: inst.b.iter().rev().map(|row| cols.iter().map(|&h| row[h]).collect()).collect(),
        a: inst.a.iter().rev().map(|&[a1, a2]| if swap { [a2, a1] } else { [a1, a2] }).collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_preserves_values(inst in instance(4, 5, 3, 3), swap in any::<bool>()) {
        let other = relabel(&inst, swap);
        let (lp, _, _) = solve_relaxation(&inst).unwrap();
        let (lp2, _, _) = solve_relaxation(&other).unwrap();
        prop_assert_eq!(&lp, &lp2);
        let a = solve_pipeline(&inst).unwrap();
        let b = solve_pipeline(&other).unwrap();
        prop_assert_eq!(a.chromatic_number(&inst), b.chromatic_number(&other));
    }

    #[test]
    fn pipeline_solutions_are_feasible_and_colorable(inst in instance(5, 6, 3, 3)) {
        let out = solve_pipeline(&inst).unwrap();
        prop_assert!(out.solution.all_integral());
        prop_assert_eq!(validate_solution(&inst, &out.solution).unwrap(), vec![]);
        let col = assemble_coloring(&inst, &out.solution).unwrap();
        prop_assert_eq!(verify_coloring(&inst, &col), vec![]);
        prop_assert_eq!(col.total(), int(out.chromatic_number(&inst)));
    }

    #[test]
    fn pipeline_matches_the_oracle(inst in instance(3, 3, 2, 2)) {
        let (ilp, _) = brute_force_ilp(&inst, &Caps::default()).unwrap();
        let out = solve_pipeline(&inst).unwrap();
        prop_assert_eq!(int(ilp), out.solution.objective());
    }

    #[test]
    fn saturation_fills_every_machine(inst in instance(4, 5, 3, 3)) {
        let out = solve_pipeline(&inst).unwrap();
        let (sat, sol, rec) = saturate(&inst, &out.solution).unwrap();
        prop_assert_eq!(sat.n(), inst.n() + rec.added_jobs.len());
        for h in 0..sat.m() {
            prop_assert_eq!(sol.machine_load(h), sol.w.clone());
        }
        prop_assert_eq!(validate_solution(&sat, &sol).unwrap(), vec![]);
    }

    #[test]
    fn search_agrees_with_the_pipeline_point(inst in instance(4, 5, 3, 3)) {
        let out = solve_pipeline(&inst).unwrap();
        let r = to_i64(&out.solution.r).unwrap();
        let w = to_i64(&out.solution.w).unwrap();
        let c = complete_at(&inst, r, w).unwrap();
        let sol = HypergraphSolution { y: c.y, x: c.x, r, w, integral: true };
        prop_assert_eq!(validate_solution(&inst, &sol).unwrap(), vec![]);
        if w > 0 {
            prop_assert!(complete_at(&inst, r, w - 1).is_none());
        }
    }

    #[test]
    fn documents_round_trip(inst in instance(4, 5, 5, 5)) {
        prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst.clone());
        let out = solve_pipeline(&inst).unwrap();
        prop_assert_eq!(parse_solution(&serialize_solution(&out.aux_point)).unwrap(), out.aux_point);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn konig_reconstructs_the_multigraph(
        mult in (1usize..5, 1usize..5).prop_flat_map(|(l, r)| prop::collection::vec(prop::collection::vec(0i64..4, r), l)),
        extra in 0i64..3,
    ) {
        let (left, right) = (mult.len(), mult[0].len());
        let deg = mult
            .iter()
            .map(|row| row.iter().sum::<i64>())
            .chain((0..right).map(|v| mult.iter().map(|row| row[v]).sum()))
            .max()
            .unwrap();
        let colors = deg + extra;
        let classes = edge_color_bipartite(left, right, &mult, colors).unwrap();
        prop_assert_eq!(classes.iter().map(|(_, k)| k).sum::<i64>(), colors);
        let mut covered = vec![vec![0i64; right]; left];
        for (edges, k) in &classes {
            prop_assert!(*k > 0);
            let mut seen_l = vec![false; left];
            let mut seen_r = vec![false; right];
            for &(u, v) in edges {
                prop_assert!(!seen_l[u] && !seen_r[v]);
                seen_l[u] = true;
                seen_r[v] = true;
                covered[u][v] += k;
            }
        }
        prop_assert_eq!(covered, mult);
    }

    #[test]
    fn konig_splits_rational_multiplicities(
        num in prop::collection::vec(prop::collection::vec(0i64..6, 3), 3),
        den in 1i64..4,
    ) {
        let mult: Vec<Vec<ExactScalar>> =
            num.iter().map(|row| row.iter().map(|&v| int(v) / int(den)).collect()).collect();
        let deg = (0..3)
            .map(|u| mult[u].iter().sum::<ExactScalar>())
            .chain((0..3).map(|v| mult.iter().map(|row| row[v].clone()).sum()))
            .max()
            .unwrap();
        let classes = edge_color_bipartite(3, 3, &mult, deg.clone()).unwrap();
        prop_assert_eq!(classes.iter().map(|(_, k)| k.clone()).sum::<ExactScalar>(), deg);
    }

    #[test]
    fn circulations_are_certified(
        nodes in 2usize..7,
        arcs in prop::collection::vec((0usize..7, 0usize..7, 0i64..4, 0i64..4, any::<bool>()), 1..14),
    ) {
        let mut net = FlowNetwork::new();
        for v in 0..nodes {
            net.add_node(format!("v{v}"));
        }
        for (u, v, lo, span, open) in arcs {
            let upper = if open { None } else { Some(lo + span) };
            net.add_arc(u % nodes, v % nodes, lo, upper);
        }
        let net = net.with_terminals(0, nodes - 1);
        match feasible_circulation(&net) {
            Circulation::Feasible(flow) => prop_assert!(check_flow(&net, &flow).is_ok()),
            Circulation::Infeasible(cut) => prop_assert!(check_cut(&net, &cut)),
        }
    }
}
