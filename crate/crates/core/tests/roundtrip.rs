use dldd::gen;
use dldd::io::{parse_edge_list, read_graph, write_edge_list, write_graph};
use dldd::verify::validate;
use dldd::{decompose, DecomposeConfig, Error, LddResult};
use tempfile::TempDir;

#[test]
fn graph_file_round_trip() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("g.txt");
    let g = gen::random_digraph(200, 900, 50, 4);
    write_graph(&g, &file).unwrap();
    let back = read_graph(&file).unwrap();
    assert_eq!(back.edges(), g.edges());
    assert_eq!(write_edge_list(&back), std::fs::read_to_string(&file).unwrap());
}

#[test]
fn result_file_round_trip_still_validates() {
    let dir = TempDir::new().unwrap();
    let g = gen::bidirected_grid(12, 12, 6, 3);
    let res = decompose(&g, 10, 9, &DecomposeConfig::default()).unwrap();
    let file = dir.path().join("r.json");
    std::fs::write(&file, res.to_json().unwrap()).unwrap();
    let back = LddResult::from_json(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(back, res);
    assert!(validate(&g, &back).ok());
}

#[test]
fn missing_file_is_io_error() {
    let dir = TempDir::new().unwrap();
    assert!(matches!(read_graph(dir.path().join("absent.txt")), Err(Error::Io(_))));
}

#[test]
fn parse_errors_name_the_line() {
    let err = parse_edge_list("3 2\n0 1 4\n1 x 2\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    assert!(parse_edge_list("2 1\n0 1 -3\n").is_err());
}
