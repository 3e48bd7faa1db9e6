use artinian::betti::betti_table;
use artinian::ghost::{
    check_conjecture_window, check_prediction, detect_ghosts, middle_ghost_default_degrees, middle_ghost_instance,
    socle_forms_instance, window_socle_degree,
};
use artinian::{GradedIdeal, PrimeField, Quotient};

fn nondecreasing(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (lo..=hi)
        .flat_map(|d| {
            nondecreasing(n - 1, d, hi).into_iter().map(move |mut rest| {
                rest.insert(0, d);
                rest
            })
        })
        .collect()
}

#[test]
fn socle_form_families_show_predicted_ghosts() {
    let f = PrimeField::default();
    let mut checked = 0;
    for n in 3..=5usize {
        for ci in nondecreasing(n, 3, 5) {
            if ci.iter().sum::<usize>() > 16 {
                continue;
            }
            for q in 1..=n - 2 {
                let inst = socle_forms_instance(f, &ci, q, 11).unwrap();
                let quotient = Quotient::new(inst.ideal.clone());
                let table = betti_table(&quotient, None).unwrap();
                let degrees = inst.degrees();
                let report = detect_ghosts(&table, &degrees, None);
                let check = check_prediction(&report, &inst.predicted);
                assert!(check.all_confirmed(), "{ci:?} q={q}: {check:?}\n{}", table.render_diagram());
                let h = quotient.hilbert_function(None);
                assert_eq!(h.socle_degree(), Some(inst.c), "{ci:?} q={q}");
                let w = check_conjecture_window(&table, &degrees, inst.c);
                assert!(w.holds, "{ci:?} q={q}: {w:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 5);
}

#[test]
fn middle_ghost_presets_are_exact() {
    let f = PrimeField::default();
    for n in 4..=6 {
        let degrees = middle_ghost_default_degrees(n).unwrap();
        let inst = middle_ghost_instance(f, &degrees, 3).unwrap();
        let table = betti_table(&Quotient::new(inst.ideal.clone()), None).unwrap();
        let check = check_prediction(&detect_ghosts(&table, &inst.degrees(), None), &inst.predicted);
        assert!(check.exact(), "n={n}: {check:?}\n{}", table.render_diagram());
    }
    assert!(middle_ghost_default_degrees(3).is_none());
}

#[test]
fn general_forms_in_three_variables_have_no_first_module_ghost() {
    let f = PrimeField::default();
    for r in 4..=6usize {
        for degrees in nondecreasing(r, 2, 4) {
            let q = Quotient::new(GradedIdeal::random(f, 3, &degrees, 5).unwrap());
            let table = betti_table(&q, None).unwrap();
            let c = window_socle_degree(3, &degrees, &q.hilbert_function(None)).unwrap();
            let w = check_conjecture_window(&table, &degrees, c);
            assert!(w.first_module_ghosts.is_empty(), "{degrees:?}: {w:?}");
            assert!(w.holds, "{degrees:?}: {w:?}");
        }
    }
}
