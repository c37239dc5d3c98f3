//! ASCII drawing of a partition: two rows of colored points, each point
//! tagged with the letter of its block, plus a block legend.

use partcat::{Partition, PointRef, Row};

fn letter(i: usize) -> char {
    if i < 26 {
        (b'A' + i as u8) as char
    } else {
        '?'
    }
}

pub fn render(p: &Partition) -> String {
    let blocks = p.print_blocks();
    let block_of = |pt: PointRef| blocks.iter().position(|b| b.contains(&pt)).expect("point in a block");
    let line = |cells: Vec<char>| cells.iter().map(char::to_string).collect::<Vec<_>>().join(" ");
    let tags = |row: Row, len: usize| -> Vec<char> {
        (1..=len)
            .map(|i| letter(block_of(PointRef { row, index: i })))
            .collect()
    };
    let colors = |cs: &[partcat::Color]| cs.iter().map(|c| c.symbol()).collect::<Vec<_>>();
    let mut out = String::new();
    out.push_str(&format!("   {}\n", line(tags(Row::Upper, p.n_upper()))));
    out.push_str(&format!("u: {}\n", line(colors(p.upper()))));
    out.push_str(&format!("l: {}\n", line(colors(p.lower()))));
    out.push_str(&format!("   {}\n", line(tags(Row::Lower, p.n_lower()))));
    for (i, b) in blocks.iter().enumerate() {
        let pts: Vec<String> = b.iter().map(ToString::to_string).collect();
        out.push_str(&format!("{} = {{{}}}\n", letter(i), pts.join(", ")));
    }
    out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n"
}
