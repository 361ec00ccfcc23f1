use ctw_core::dp::{combine_parallel, combine_series};
use ctw_core::generators::{gen_apex_binary_tree, gen_named};
use ctw_core::layout::graph_layout_cost;
use ctw_core::{
    brute_ctw, brute_ectvs, cap_for, ctvs_block_rooted, ctw, ctw_biconnected, ectvs_rooted_edge,
    is_connected_rooted_layout, layout_cost, recognize_sp, sp_tree_for_edge, BlockCutTree, DpTable,
    Entry, Error, ExtendedRootedGraph, Graph, Layout, OracleOptions, Side, SolveOptions,
};

fn named(name: &str) -> Graph {
    gen_named(name).unwrap()
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

#[test]
fn graph_construction() {
    assert_eq!(Graph::new(&["x", "y"], &[("x", "y")]).unwrap().m(), 1);
    assert!(matches!(
        Graph::new(&["a"], &[("a", "a")]),
        Err(Error::SelfLoop(_))
    ));
    let g = Graph::simplify_multigraph(&["x", "y"], &[("x", "y"), ("x", "y"), ("x", "y")]);
    assert_eq!((g.n(), g.m()), (2, 1));
    let p = Graph::simplify_multigraph::<&str, &str>(&[], &[("x", "y"), ("y", "z"), ("x", "y")]);
    assert_eq!(p.m(), 2);
    assert_eq!(p.degree(p.index_of("y").unwrap()), 2);
}

#[test]
fn connectivity_and_costs() {
    let path = named("path-3");
    assert!(!path.is_connected_subset(&[0, 2]).unwrap());
    assert!(path.is_connected_subset(&[]).unwrap());
    let rooted = ExtendedRootedGraph::rooted(path.clone(), vec![0]).unwrap();
    assert!(!is_connected_rooted_layout(&rooted, &Layout::new(vec![0, 2, 1], 3).unwrap()).unwrap());
    let leaf = ExtendedRootedGraph::from_labels(
        &["x", "y", "r1"],
        &[("x", "y")],
        &[("y", "r1")],
        &["x", "r1"],
    )
    .unwrap();
    let sigma = Layout::new(vec![0, 2, 1], 3).unwrap();
    assert!(is_connected_rooted_layout(&leaf, &sigma).unwrap());
    assert_eq!(layout_cost(&leaf, &sigma, true).unwrap(), 2);
    assert_eq!(
        graph_layout_cost(&path, &Layout::new(vec![0, 1, 2], 3).unwrap()).unwrap(),
        1
    );
    let c4 = Graph::new(
        &["x", "a", "b", "y"],
        &[("x", "a"), ("a", "b"), ("b", "y"), ("y", "x")],
    )
    .unwrap();
    let sigma = Layout::from_labels(&c4, &["x", "y", "a", "b"]).unwrap();
    assert_eq!(graph_layout_cost(&c4, &sigma).unwrap(), 2);
}

#[test]
fn block_structure() {
    let bowtie = BlockCutTree::new(&named("two-triangles")).unwrap();
    assert_eq!(
        (bowtie.blocks().len(), bowtie.cut_vertices()),
        (2, &[2][..])
    );
    assert!(BlockCutTree::new(&named("cycle-4"))
        .unwrap()
        .cut_vertices()
        .is_empty());
    let p = BlockCutTree::new(&named("path-3")).unwrap();
    assert_eq!(p.blocks(), &[vec![0, 1], vec![1, 2]]);
}

#[test]
fn recognition() {
    let tri = named("triangle");
    let t = recognize_sp(&tri, 0, 1).unwrap();
    assert_eq!(t.realize().unwrap().edges, tri.edges().to_vec());
    assert_eq!(recognize_sp(&named("K2"), 0, 1).unwrap().len(), 1);
    assert_eq!(
        recognize_sp(&named("K4"), 0, 1).unwrap_err(),
        Error::NotSeriesParallel
    );
    let d = named("diamond");
    let t = sp_tree_for_edge(&d, 1, 2).unwrap();
    assert_eq!(t.realize().unwrap().edges, d.edges().to_vec());
    assert_eq!(t.terminals(), (1, 2));
}

#[test]
fn table_combinators() {
    assert_eq!((cap_for(2), cap_for(8), cap_for(1000)), (4, 8, 22));
    let leaf = DpTable::leaf(0, 1, 4);
    assert_eq!(leaf.rooted(), 1);
    assert_eq!(leaf.get(Entry::star(3, Side::First)), 4);
    assert_eq!(leaf.get(Entry::closed_star(1, Side::Second)), 2);
    let path = combine_series(&DpTable::leaf(0, 2, 4), &DpTable::leaf(2, 1, 4)).unwrap();
    assert_eq!(path.rooted(), 2);
    assert_eq!(path.get(Entry::star(1, Side::First)), 2);
    assert_eq!(combine_parallel(&leaf, &path).unwrap().rooted(), 2);
    assert_eq!(
        combine_parallel(&leaf, &DpTable::leaf(0, 1, 4))
            .unwrap()
            .rooted(),
        1
    );
    assert_eq!(combine_series(&leaf, &path), Err(Error::TerminalMismatch));
}

#[test]
fn solver_values() {
    assert_eq!(ectvs_rooted_edge(&named("K2"), 0, 1, &opts()).unwrap().0, 1);
    let c4 = named("cycle-4");
    for &(x, y) in c4.edges() {
        let (v, w) = ectvs_rooted_edge(&c4, x, y, &opts()).unwrap();
        assert_eq!(v, 2);
        assert_eq!(&w.order()[..2], &[x, y]);
    }
    assert_eq!(
        ectvs_rooted_edge(&named("diamond"), 1, 2, &opts())
            .unwrap()
            .0,
        2
    );
    assert_eq!(
        ctw_biconnected(&named("triangle"), &opts()).unwrap().value,
        2
    );
    assert_eq!(ctw_biconnected(&c4, &opts()).unwrap().value, 2);
    let apex = gen_apex_binary_tree(2);
    assert_eq!(
        ctw_biconnected(&apex, &opts()).unwrap().value,
        brute_ctw(&apex, &OracleOptions::default()).unwrap().value
    );
    assert_eq!(ctvs_block_rooted(&named("K2"), 0, &opts()).unwrap().0, 1);
    for r in 0..4 {
        assert_eq!(ctvs_block_rooted(&c4, r, &opts()).unwrap().0, 2);
        if r < 3 {
            assert_eq!(
                ctvs_block_rooted(&named("triangle"), r, &opts()).unwrap().0,
                2
            );
        }
    }
    assert_eq!(ctw(&named("path-5"), &opts()).unwrap().value, 1);
    assert_eq!(ctw(&named("two-triangles"), &opts()).unwrap().value, 2);
    let lollipop = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
    assert_eq!(ctw(&lollipop, &opts()).unwrap().value, 2);
    assert!(matches!(
        ctw(&named("K4"), &opts()),
        Err(Error::NotTreewidth2 { .. })
    ));
}

#[test]
fn oracle_values() {
    let e = ExtendedRootedGraph::from_labels(&["x", "y"], &[("x", "y")], &[], &["x", "y"]).unwrap();
    assert_eq!(brute_ectvs(&e, &OracleOptions::default()).unwrap().value, 1);
    assert_eq!(
        brute_ctw(&named("star-3"), &OracleOptions::default())
            .unwrap()
            .value,
        1
    );
    assert_eq!(
        brute_ctw(&named("wheel-4"), &OracleOptions::default())
            .unwrap()
            .value,
        3
    );
    assert_eq!(
        brute_ctw(&named("fan-3"), &OracleOptions::default())
            .unwrap()
            .value,
        2
    );
}
