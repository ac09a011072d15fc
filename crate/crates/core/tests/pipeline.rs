use hyperchrom::chromatic::{assemble_coloring, chromatic_number, verify_coloring};
use hyperchrom::flow::feasible_circulation;
use hyperchrom::model::{generate_one_group, validate_solution, Group, Instance};
use hyperchrom::oracle::{brute_force_ilp, check_conjecture, Caps};
use hyperchrom::rounding::{build_q_network, closed_form_solution, recover_x, solve_pipeline, RecoverError, Rounding};
use hyperchrom::scalar::int;

/// Three jobs where the `y` found in the projection network admits no
/// integral `x`, although an integral optimum exists at the same `(r, w)`.
fn projection_gap() -> Instance {
    Instance {
        jobs: vec!["J1".into(), "J2".into(), "J3".into()],
        group1: vec!["M1".into()],
        group2: vec!["M2".into(), "M3".into()],
        b: vec![vec![1, 1, 2], vec![0, 1, 1], vec![0, 0, 0]],
        a: vec![[2, 1], [1, 1], [0, 2]],
    }
}

#[test]
fn projected_y_can_lack_an_integral_x() {
    let inst = projection_gap();
    let qn = build_q_network(&inst, 2, 2).unwrap();
    let y = qn.extract_y(&feasible_circulation(&qn.net).flow().unwrap());
    assert!(matches!(recover_x(&inst, &y, 2, 2), Err(RecoverError::Infeasible(_))));

    let out = solve_pipeline(&inst).unwrap();
    assert!(matches!(out.rounding, Rounding::Search { .. }));
    assert_eq!((out.solution.r.clone(), out.solution.w.clone()), (int(2), int(2)));
    assert_eq!(validate_solution(&inst, &out.solution).unwrap(), vec![]);
    let (ilp, _) = brute_force_ilp(&inst, &Caps::default()).unwrap();
    assert_eq!(int(ilp), out.solution.objective());
    let col = assemble_coloring(&inst, &out.solution).unwrap();
    assert!(verify_coloring(&inst, &col).is_empty());
}

#[test]
fn one_group_instances_use_the_closed_form() {
    for seed in 0..5 {
        let inst = generate_one_group(seed, 4, 3, Group::Two, 3, 3);
        let chi = chromatic_number(&inst).unwrap();
        assert_eq!(chi, inst.delta(Group::One) + inst.bipartite_degree());
        let sol = closed_form_solution(&inst).unwrap();
        let col = assemble_coloring(&inst, &sol).unwrap();
        assert!(verify_coloring(&inst, &col).is_empty());
        assert_eq!(col.total(), int(chi));
    }
}

#[test]
fn oracle_agrees_on_seeded_tiny_instances() {
    let shape = hyperchrom::model::BatchShape { max_machines: 3, max_jobs: 4, bmax: 2, amax: 2 };
    for i in 0..20 {
        let inst = hyperchrom::model::batch_instance(99, i, shape);
        let rep = check_conjecture(&inst, &Caps::default()).unwrap();
        assert!(rep.agree, "#{i}: {}", rep.to_json());
    }
}
