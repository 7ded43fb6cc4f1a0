//! Published example matrices with their recorded invariants.
//!
//! Rows are transcribed in the printed order with 0-based vertex labels.

use crate::tournament::Tournament;

pub const F1_TEXT: &str = "\
010
001
100
";

pub const F2_TEXT: &str = "\
0100
0010
1001
1100
";

pub const F3_TEXT: &str = "\
01000
00100
10010
11001
11100
";

pub const F4_TEXT: &str = "\
01000
00010
11000
10101
11100
";

/// Three order-7 tournaments with 8 three-cycles and score vector
/// `(1,2,2,3,4,4,5)`, transcribed verbatim.
///
/// The last two are singular. The first has determinant 1; the strong
/// singular maximizer it presumably stands for is `T7:1b1220`, which differs
/// from it in two arcs.
pub const ORDER7_TEXTS: [&str; 3] = [
    "\
0100000
0010010
1001000
1100100
1110010
1011001
1111100
",
    "\
0010000
1000010
0101000
1100100
1110010
1011001
1111100
",
    "\
0010000
1001000
0100010
1010100
1110001
1101100
1111010
",
];

fn parse(text: &str) -> Tournament {
    Tournament::from_matrix_text(text).expect("fixture matrices are valid tournaments")
}

pub fn f1() -> Tournament {
    parse(F1_TEXT)
}

pub fn f2() -> Tournament {
    parse(F2_TEXT)
}

pub fn f3() -> Tournament {
    parse(F3_TEXT)
}

pub fn f4() -> Tournament {
    parse(F4_TEXT)
}

pub fn order7_examples() -> [Tournament; 3] {
    ORDER7_TEXTS.map(parse)
}

/// Two copies of `F1`, the first beating every vertex of the second.
pub fn f1_then_f1() -> Tournament {
    let mut rows = [0u32; 6];
    for i in 0..3 {
        rows[i] = f1().rows()[i] | 0b111_000;
        rows[i + 3] = f1().rows()[i] << 3;
    }
    Tournament::from_rows(&rows).expect("block tournament is valid")
}

/// A published matrix together with the values recorded for it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub tournament: Tournament,
    pub determinant: i128,
    pub c3: u64,
    pub sorted_scores: &'static [u32],
}

pub fn all() -> Vec<Fixture> {
    let [m1, m2, m3] = order7_examples();
    let max7: &'static [u32] = &[1, 2, 2, 3, 4, 4, 5];
    vec![
        Fixture {
            name: "F1",
            tournament: f1(),
            determinant: 1,
            c3: 1,
            sorted_scores: &[1, 1, 1],
        },
        Fixture {
            name: "F2",
            tournament: f2(),
            determinant: -1,
            c3: 2,
            sorted_scores: &[1, 1, 2, 2],
        },
        Fixture {
            name: "F3",
            tournament: f3(),
            determinant: 1,
            c3: 3,
            sorted_scores: &[1, 1, 2, 3, 3],
        },
        Fixture {
            name: "F4",
            tournament: f4(),
            determinant: 1,
            c3: 3,
            sorted_scores: &[1, 1, 2, 3, 3],
        },
        Fixture {
            name: "S7a",
            tournament: m1,
            determinant: 1,
            c3: 8,
            sorted_scores: max7,
        },
        Fixture {
            name: "S7b",
            tournament: m2,
            determinant: 0,
            c3: 8,
            sorted_scores: max7,
        },
        Fixture {
            name: "S7c",
            tournament: m3,
            determinant: 0,
            c3: 8,
            sorted_scores: max7,
        },
    ]
}
