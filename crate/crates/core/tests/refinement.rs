//! The refinement graph of a pair of twisted maps and its labelling.

use prismatoid::refinement::{cross_check_lemma_maps, refinement_graph, verify_d_lemma};
use prismatoid::twisted::{default_alpha_small, default_tol};
use prismatoid::Error;

#[test]
fn labelling_lemma_holds() {
    for d in [3, 4] {
        for q in [2, 4, 6, 8] {
            let g = refinement_graph(d, q).unwrap();
            let r = verify_d_lemma(&g);
            assert!(r.pass, "d={d}, q={q}: {:?}", r.witnesses);
            assert_eq!(r.dist_tilde, Some(2 + q / 2));
            assert_eq!(r.dist_h, Some(2 + q / 2));
        }
    }
}

#[test]
fn node_counts_are_frozen() {
    // (d, q, nodes) recorded from the construction; they grow like m²·d.
    for (d, q, nodes) in [(3, 2, 180), (3, 4, 864), (4, 2, 320), (4, 8, 9728)] {
        assert_eq!(refinement_graph(d, q).unwrap().nodes.len(), nodes, "d={d}, q={q}");
    }
}

#[test]
fn corrupted_label_is_reported() {
    let mut g = refinement_graph(3, 2).unwrap();
    let v = (0..g.nodes.len()).find(|&v| g.labels[v] == 1 && g.h_neighbors(v).iter().any(|&w| g.is_plus_vertex(w))).unwrap();
    g.labels[v] = 2;
    let r = verify_d_lemma(&g);
    assert!(!r.pass);
    assert!(!r.property_no_jumps);
    assert!(!r.labels_are_distances);
    assert!(!r.witnesses.is_empty());
}

#[test]
fn augmentation_joins_consecutive_labels() {
    let g = refinement_graph(3, 2).unwrap();
    assert!(g.augmentation_edge_count() > 0);
    let v = (0..g.nodes.len()).find(|&v| g.labels[v] == 1).unwrap();
    let nb = g.tilde_neighbors(v);
    assert!(nb.iter().all(|&w| g.labels[w].abs_diff(1) <= 1 || g.h_neighbors(v).contains(&w)));
    let zeros = (0..g.nodes.len()).filter(|&w| g.labels[w] == 0).count();
    assert!(nb.iter().filter(|&&w| g.labels[w] == 0).count() == zeros);
    assert!((0..g.nodes.len()).filter(|&w| g.is_minus_vertex(w)).all(|w| g.labels[w] == g.top_label()));
}

#[test]
fn odd_or_zero_q_is_rejected() {
    assert!(matches!(refinement_graph(3, 3), Err(Error::InvalidArgument(_))));
    assert!(matches!(refinement_graph(3, 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn map_distance_matches_prismatoid_width() {
    for q in [2, 4] {
        let r = cross_check_lemma_maps(3, q, &default_alpha_small(), &default_tol()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.prismatoid_width, 4 + q / 2);
    }
}
