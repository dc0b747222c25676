//! Graph generators and the `p td` / `p edge` file formats.

use surplus_vc::io::{parse_graph, render_graph, Format};
use surplus_vc::gen;

fn main() {
    let graphs = [
        ("petersen", gen::named("petersen").unwrap()),
        ("C9(1,2)", gen::circulant(9, &[1, 2]).unwrap()),
        ("gnp(8, 0.4, 7)", gen::gnp(8, 0.4, 7).unwrap()),
        ("4-regular on 10", gen::random_regular(10, 4, 2).unwrap()),
    ];
    for (name, g) in &graphs {
        let text = render_graph(g, Format::Td);
        let back = parse_graph(&text).unwrap();
        println!("{name}: n = {}, m = {}, round trip ok = {}", g.n(), g.m(), back.edges().eq(g.edges()));
    }
    print!("{}", render_graph(&gen::cycle(5).unwrap(), Format::Edge));
    match parse_graph("p td 3 5\n1 2\n2 3\n") {
        Err(e) => println!("malformed input: {e}"),
        Ok(_) => unreachable!(),
    }
}
