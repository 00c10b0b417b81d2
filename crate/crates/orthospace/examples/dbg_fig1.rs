use orthospace::mub::{figure1_diagram, FIGURE1_NAMES};
fn main() {
    let d = figure1_diagram();
    println!("vertices: {:?}", d.vertices());
    println!("names   : {:?}", FIGURE1_NAMES);
    let g = d.co_block_graph();
    let iu = d.vertex_index("u").unwrap();
    let ia = d.vertex_index("a1").unwrap();
    println!("u={iu} a1={ia} adjacent={}", g.adjacent(iu, ia));
    for b in d.blocks() {
        println!("{:?}", b.iter().map(|&v| &d.vertices()[v]).collect::<Vec<_>>());
    }
}
