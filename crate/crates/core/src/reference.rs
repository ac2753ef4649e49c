//! Golden Graver degree histograms for small scrolls, used by the table
//! reproduction command and the acceptance suite.

/// One reference row: scroll name, block sizes, histogram `(degree, count)`.
#[derive(Debug, Clone, Copy)]
pub struct KnownTable {
    pub name: &'static str,
    pub blocks: &'static [usize],
    pub histogram: &'static [(usize, usize)],
    /// Heavier rows that honor a time budget when reproduced.
    pub stretch: bool,
    /// Per-row budget in seconds used by the reproduction command.
    pub budget_secs: u64,
}

pub const KNOWN_TABLES: &[KnownTable] = &[
    KnownTable {
        name: "S(2,2)",
        blocks: &[3, 3],
        histogram: &[(2, 7), (3, 4)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(2,2,2)",
        blocks: &[3, 3, 3],
        histogram: &[(2, 18), (3, 24)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(4)",
        blocks: &[5],
        histogram: &[(2, 7), (3, 7), (4, 2)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(3,2)",
        blocks: &[4, 3],
        histogram: &[(2, 12), (3, 16), (4, 4), (5, 1)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(3,2,2)",
        blocks: &[4, 3, 3],
        histogram: &[(2, 26), (3, 58), (4, 22), (5, 4)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(3,3)",
        blocks: &[4, 4],
        histogram: &[(2, 20), (3, 40), (4, 18), (5, 4)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(3,3,2,2)",
        blocks: &[4, 4, 3, 3],
        histogram: &[(2, 59), (3, 242), (4, 208), (5, 36)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(4,2)",
        blocks: &[5, 3],
        histogram: &[(2, 19), (3, 39), (4, 20), (5, 4)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(4,3)",
        blocks: &[5, 4],
        histogram: &[(2, 30), (3, 86), (4, 58), (5, 15), (6, 2), (7, 1)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(4,4)",
        blocks: &[5, 5],
        histogram: &[(2, 44), (3, 166), (4, 146), (5, 52), (6, 12), (7, 4)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(4,3,2,2)",
        blocks: &[5, 4, 3, 3],
        histogram: &[(2, 75), (3, 391), (4, 524), (5, 176), (6, 6), (7, 1)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(5,2)",
        blocks: &[6, 3],
        histogram: &[(2, 28), (3, 83), (4, 72), (5, 32), (6, 4), (7, 1)],
        stretch: false,
        budget_secs: 120,
    },
    KnownTable {
        name: "S(6,2)",
        blocks: &[7, 3],
        histogram: &[(2, 40), (3, 157), (4, 182), (5, 95), (6, 28), (7, 4)],
        stretch: true,
        budget_secs: 600,
    },
    KnownTable {
        name: "S(5,3)",
        blocks: &[6, 4],
        histogram: &[(2, 42), (3, 166), (4, 174), (5, 78), (6, 16), (7, 6), (8, 1)],
        stretch: true,
        budget_secs: 600,
    },
    KnownTable {
        name: "S(6,3)",
        blocks: &[7, 4],
        histogram: &[(2, 57), (3, 290), (4, 412), (5, 210), (6, 62), (7, 14), (8, 2)],
        stretch: true,
        budget_secs: 600,
    },
    KnownTable {
        name: "S(7,2)",
        blocks: &[8, 3],
        histogram: &[
            (2, 55),
            (3, 280),
            (4, 432),
            (5, 294),
            (6, 130),
            (7, 46),
            (8, 4),
            (9, 1),
        ],
        stretch: true,
        budget_secs: 600,
    },
    KnownTable {
        name: "S(5,5,5)",
        blocks: &[6, 6, 6],
        histogram: &[
            (2, 204),
            (3, 2526),
            (4, 10002),
            (5, 10404),
            (6, 5088),
            (7, 1764),
            (8, 444),
            (9, 78),
        ],
        stretch: true,
        budget_secs: 1800,
    },
    KnownTable {
        name: "S(6,5)",
        blocks: &[7, 6],
        histogram: &[
            (2, 105),
            (3, 813),
            (4, 1678),
            (5, 1136),
            (6, 454),
            (7, 149),
            (8, 42),
            (9, 12),
            (10, 2),
            (11, 1),
        ],
        stretch: true,
        budget_secs: 600,
    },
];

/// Rows reproduced by the default (non-stretch) run.
pub fn core_rows() -> impl Iterator<Item = &'static KnownTable> {
    KNOWN_TABLES.iter().filter(|t| !t.stretch)
}

pub fn stretch_rows() -> impl Iterator<Item = &'static KnownTable> {
    KNOWN_TABLES.iter().filter(|t| t.stretch)
}
