use std::collections::{BTreeSet, HashMap};

use walkingtime::datagen::{
    boards_to_temporal_graph, cell_label, gol_step, node_color_labels, two_glider_config, Cell, Color, GolBoard,
    GolTrace, Neighborhood,
};

fn components(cells: &BTreeSet<Cell>) -> Vec<BTreeSet<Cell>> {
    let mut left = cells.clone();
    let mut out = Vec::new();
    while let Some(&seed) = left.iter().next() {
        let mut comp = BTreeSet::new();
        let mut stack = vec![seed];
        left.remove(&seed);
        while let Some((x, y)) = stack.pop() {
            comp.insert((x, y));
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if left.remove(&(x + dx, y + dy)) {
                        stack.push((x + dx, y + dy));
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

#[test]
fn two_glider_trace_counts() {
    let init = two_glider_config();
    let trace = GolTrace::run(&init.board(), 200);
    let g = boards_to_temporal_graph(&trace, Neighborhood::Moore8);
    assert_eq!(g.node_count(), 404);
    assert_eq!(g.point_edges().len(), 2200);
    // The alternative adjacency does not reproduce the edge count.
    let g4 = boards_to_temporal_graph(&trace, Neighborhood::VonNeumann4);
    assert_eq!(g4.node_count(), 404);
    assert_ne!(g4.point_edges().len(), 2200);
}

#[test]
fn every_edge_joins_cells_live_at_its_time() {
    let init = two_glider_config();
    let trace = GolTrace::run(&init.board(), 200);
    let g = boards_to_temporal_graph(&trace, Neighborhood::Moore8);
    let cell_of: HashMap<String, Cell> = trace.visited().into_iter().map(|c| (cell_label(c), c)).collect();
    for e in g.point_edges() {
        let a = cell_of[g.symbols().label(e.u).unwrap()];
        let b = cell_of[g.symbols().label(e.v).unwrap()];
        let board = &trace.boards[e.t as usize];
        assert!(a != b && board.is_alive(a) && board.is_alive(b));
        assert!((a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1);
    }
    // Conversely, every live neighbor pair produced an edge.
    let expected: usize = trace
        .boards
        .iter()
        .map(|b| {
            b.live
                .iter()
                .flat_map(|&(x, y)| [(x + 1, y), (x - 1, y + 1), (x, y + 1), (x + 1, y + 1)])
                .filter(|c| b.is_alive(*c))
                .count()
        })
        .sum();
    assert_eq!(expected, g.point_edges().len());
}

#[test]
fn gliders_stay_two_components() {
    let init = two_glider_config();
    let trace = GolTrace::run(&init.board(), 200);
    let red = GolTrace::run(&GolBoard::new(init.red.clone()), 200);
    let blue = GolTrace::run(&GolBoard::new(init.blue.clone()), 200);
    for (t, board) in trace.boards.iter().enumerate() {
        let comps = components(&board.live);
        assert_eq!(comps.len(), 2, "step {t}");
        // The combined board is exactly the two separate runs overlaid.
        let union: BTreeSet<Cell> = red.boards[t].live.union(&blue.boards[t].live).copied().collect();
        assert_eq!(board.live, union, "step {t}");
    }
}

#[test]
fn color_partition() {
    let init = two_glider_config();
    let trace = GolTrace::run(&init.board(), 200);
    let labels = node_color_labels(&trace, &init.red, &init.blue);
    assert_eq!(labels.len(), 404);
    let count = |c: Color| labels.iter().filter(|(_, x)| *x == c).count();
    assert!(count(Color::Red) > 150 && count(Color::Blue) > 150);
    assert!(count(Color::Yellow) > 0);
    // Yellow cells lie where both trajectories pass.
    let red = GolTrace::run(&GolBoard::new(init.red.clone()), 200).visited();
    let blue = GolTrace::run(&GolBoard::new(init.blue.clone()), 200).visited();
    for (c, color) in &labels {
        if *color == Color::Yellow {
            assert!(red.contains(c) && blue.contains(c));
        }
    }
}

#[test]
fn trace_follows_rules() {
    let trace = GolTrace::run(&two_glider_config().board(), 50);
    for w in trace.boards.windows(2) {
        assert_eq!(w[1], gol_step(&w[0]));
    }
}
