//! Game of Life traces as temporal graphs.
//!
//! Every cell that is ever alive becomes a node. Two cells that are grid
//! neighbors and both alive at step `t` get a time-point edge at `t`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::graph::{InputTemporalGraph, NodeId, SymbolTable};

/// `(x, y)` with `y` growing downward.
pub type Cell = (i64, i64);

const MOORE: [(i64, i64); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

/// Sparse unbounded board.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GolBoard {
    pub live: BTreeSet<Cell>,
}

impl GolBoard {
    pub fn new<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        GolBoard {
            live: cells.into_iter().collect(),
        }
    }

    pub fn is_alive(&self, c: Cell) -> bool {
        self.live.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live.is_empty()
    }

    /// Translated copy.
    pub fn shifted(&self, dx: i64, dy: i64) -> Self {
        GolBoard::new(self.live.iter().map(|&(x, y)| (x + dx, y + dy)))
    }
}

/// B3/S23 on the Moore neighborhood.
pub fn gol_step(b: &GolBoard) -> GolBoard {
    let mut counts: HashMap<Cell, u8> = HashMap::with_capacity(b.live.len() * 8);
    for &(x, y) in &b.live {
        for (dx, dy) in MOORE {
            *counts.entry((x + dx, y + dy)).or_insert(0) += 1;
        }
    }
    GolBoard::new(
        counts
            .into_iter()
            .filter(|&(c, n)| n == 3 || (n == 2 && b.live.contains(&c)))
            .map(|(c, _)| c),
    )
}

/// `boards[t]` is the board at step `t`, starting from the initial board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolTrace {
    pub boards: Vec<GolBoard>,
}

impl GolTrace {
    /// `steps` boards: the initial one plus `steps - 1` updates.
    pub fn run(initial: &GolBoard, steps: usize) -> Self {
        let mut boards = Vec::with_capacity(steps);
        if steps > 0 {
            boards.push(initial.clone());
        }
        while boards.len() < steps {
            let next = gol_step(boards.last().expect("nonempty"));
            boards.push(next);
        }
        GolTrace { boards }
    }

    /// Every cell alive at some step.
    pub fn visited(&self) -> BTreeSet<Cell> {
        self.boards.iter().flat_map(|b| b.live.iter().copied()).collect()
    }
}

/// Which grid cells count as neighbors for edge creation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Neighborhood {
    #[default]
    Moore8,
    VonNeumann4,
}

impl Neighborhood {
    /// Half of the offsets, so each unordered neighbor pair is seen once.
    fn forward_offsets(self) -> &'static [(i64, i64)] {
        match self {
            Neighborhood::Moore8 => &[(1, 0), (-1, 1), (0, 1), (1, 1)],
            Neighborhood::VonNeumann4 => &[(1, 0), (0, 1)],
        }
    }
}

impl std::str::FromStr for Neighborhood {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "moore8" => Ok(Neighborhood::Moore8),
            "vonneumann4" => Ok(Neighborhood::VonNeumann4),
            _ => Err(format!("unknown neighborhood {s:?} (expected moore8 or vonneumann4)")),
        }
    }
}

impl fmt::Display for Neighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Neighborhood::Moore8 => "moore8",
            Neighborhood::VonNeumann4 => "vonneumann4",
        })
    }
}

/// Node label for a cell, e.g. `c3_-1`.
pub fn cell_label((x, y): Cell) -> String {
    format!("c{x}_{y}")
}

/// One node per visited cell, interned in (step, cell) first-seen order; one
/// time-point edge per neighbor pair alive at the same step.
pub fn boards_to_temporal_graph(trace: &GolTrace, neighborhood: Neighborhood) -> InputTemporalGraph {
    let mut symbols = SymbolTable::new();
    let mut ids: HashMap<Cell, NodeId> = HashMap::new();
    for board in &trace.boards {
        for &c in &board.live {
            ids.entry(c).or_insert_with(|| symbols.intern(&cell_label(c)));
        }
    }
    let mut g = InputTemporalGraph::with_symbols(symbols);
    for (t, board) in trace.boards.iter().enumerate() {
        for &(x, y) in &board.live {
            for &(dx, dy) in neighborhood.forward_offsets() {
                let other = (x + dx, y + dy);
                if board.live.contains(&other) {
                    g.add_point_edge(ids[&(x, y)], ids[&other], t as f64)
                        .expect("interned endpoints, integral time");
                }
            }
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
    Yellow,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Yellow => "yellow",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Color {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "red" => Ok(Color::Red),
            "blue" => Ok(Color::Blue),
            "yellow" => Ok(Color::Yellow),
            _ => Err(format!("unknown color {s:?}")),
        }
    }
}

/// The two gliders of the demonstration board, in relative coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialConfig {
    pub red: Vec<Cell>,
    pub blue: Vec<Cell>,
}

impl InitialConfig {
    pub fn board(&self) -> GolBoard {
        GolBoard::new(self.red.iter().chain(&self.blue).copied())
    }
}

pub fn two_glider_config() -> InitialConfig {
    InitialConfig {
        red: vec![(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)],
        blue: vec![(53, 5), (52, 6), (54, 7), (53, 7), (52, 7)],
    }
}

/// Attributes each visited cell of `trace` to the trajectories of the red
/// and blue patterns, each simulated on its own for the same number of
/// steps. Cells on one trajectory only take its color; cells on both, or on
/// neither (debris from interaction), are yellow.
pub fn node_color_labels(trace: &GolTrace, red_cells: &[Cell], blue_cells: &[Cell]) -> Vec<(Cell, Color)> {
    let steps = trace.boards.len();
    let red = GolTrace::run(&GolBoard::new(red_cells.iter().copied()), steps).visited();
    let blue = GolTrace::run(&GolBoard::new(blue_cells.iter().copied()), steps).visited();
    trace
        .visited()
        .into_iter()
        .map(|c| {
            let color = match (red.contains(&c), blue.contains(&c)) {
                (true, false) => Color::Red,
                (false, true) => Color::Blue,
                _ => Color::Yellow,
            };
            (c, color)
        })
        .collect()
}

/// `label,color` rows under a header.
pub fn labels_csv(labels: &[(Cell, Color)]) -> String {
    let mut out = String::from("label,color\n");
    for (c, color) in labels {
        out.push_str(&cell_label(*c));
        out.push(',');
        out.push_str(color.as_str());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn glider() -> GolBoard {
        GolBoard::new(two_glider_config().red)
    }

    #[test]
    fn empty_stays_empty() {
        assert!(gol_step(&GolBoard::default()).is_empty());
    }

    #[test]
    fn blinker_flips() {
        let b = GolBoard::new([(0, 0), (1, 0), (2, 0)]);
        assert_eq!(gol_step(&b), GolBoard::new([(1, -1), (1, 0), (1, 1)]));
        assert_eq!(gol_step(&gol_step(&b)), b);
    }

    #[test]
    fn gliders_translate() {
        let g = glider();
        let mut b = g.clone();
        for _ in 0..4 {
            b = gol_step(&b);
        }
        assert_eq!(b, g.shifted(1, 1));

        let blue = GolBoard::new(two_glider_config().blue);
        let mut b = blue.clone();
        for _ in 0..4 {
            b = gol_step(&b);
        }
        // Moves down-left, toward the red glider's diagonal.
        assert_eq!(b, blue.shifted(-1, 1));
    }

    #[test]
    fn initial_config_has_ten_cells() {
        let cfg = two_glider_config();
        assert_eq!(cfg.board().len(), 10);
    }

    #[test]
    fn trace_length_and_determinism() {
        let init = two_glider_config().board();
        let a = GolTrace::run(&init, 20);
        assert_eq!(a.boards.len(), 20);
        assert_eq!(a.boards[0], init);
        assert_eq!(a, GolTrace::run(&init, 20));
        for w in a.boards.windows(2) {
            assert_eq!(w[1], gol_step(&w[0]));
        }
        assert!(GolTrace::run(&init, 0).boards.is_empty());
    }

    #[test]
    fn block_still_life_graph() {
        let block = GolBoard::new([(0, 0), (1, 0), (0, 1), (1, 1)]);
        let trace = GolTrace::run(&block, 3);
        let g = boards_to_temporal_graph(&trace, Neighborhood::Moore8);
        assert_eq!(g.node_count(), 4);
        // All 6 pairs are Moore neighbors, every step.
        assert_eq!(g.point_edges().len(), 18);
        let g4 = boards_to_temporal_graph(&trace, Neighborhood::VonNeumann4);
        assert_eq!(g4.point_edges().len(), 12);
    }

    #[test]
    fn blinker_two_steps() {
        let b = GolBoard::new([(0, 0), (1, 0), (2, 0)]);
        let trace = GolTrace::run(&b, 2);
        let g = boards_to_temporal_graph(&trace, Neighborhood::Moore8);
        assert_eq!(g.node_count(), 5);
        // Two adjacent pairs per step; ends of the bar are two apart.
        assert_eq!(g.point_edges().len(), 4);
        assert!(g.point_edges().iter().all(|e| e.u != e.v));
    }

    #[test]
    fn edges_only_between_live_neighbors() {
        let init = two_glider_config();
        let trace = GolTrace::run(&init.board(), 60);
        let g = boards_to_temporal_graph(&trace, Neighborhood::Moore8);
        let cells: HashMap<&str, Cell> = trace
            .visited()
            .into_iter()
            .map(|c| (g.symbols().label(g.symbols().id(&cell_label(c)).unwrap()).unwrap(), c))
            .collect();
        for e in g.point_edges() {
            let a = cells[g.symbols().label(e.u).unwrap()];
            let b = cells[g.symbols().label(e.v).unwrap()];
            let board = &trace.boards[e.t as usize];
            assert!(board.is_alive(a) && board.is_alive(b));
            assert!((a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1 && a != b);
        }
        assert_eq!(g.node_count(), trace.visited().len());
    }

    #[test]
    fn colors_of_initial_cells() {
        let init = two_glider_config();
        let trace = GolTrace::run(&init.board(), 200);
        let colors: HashMap<Cell, Color> = node_color_labels(&trace, &init.red, &init.blue).into_iter().collect();
        for c in &init.red {
            assert_eq!(colors[c], Color::Red);
        }
        for c in &init.blue {
            assert_eq!(colors[c], Color::Blue);
        }
        assert!(colors.values().any(|&c| c == Color::Yellow));
    }

    #[test]
    fn labels_csv_format() {
        let csv = labels_csv(&[((1, -2), Color::Red), ((0, 0), Color::Yellow)]);
        assert_eq!(csv, "label,color\nc1_-2,red\nc0_0,yellow\n");
    }

    #[test]
    fn neighborhood_parse() {
        assert_eq!("moore8".parse::<Neighborhood>(), Ok(Neighborhood::Moore8));
        assert_eq!(Neighborhood::VonNeumann4.to_string(), "vonneumann4");
        assert!("hex".parse::<Neighborhood>().is_err());
    }
}
