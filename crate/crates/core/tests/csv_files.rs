use std::fs::File;
use std::io::{BufRead, BufReader};

use richwords::defect::{defect_tables, write_tables_csv, TableConfig, TABLE_HEADER};
use richwords::enumeration::{
    bounds_hold, count_series, read_series_csv, write_series_csv, EnumConfig,
};

#[test]
fn series_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    for k in [2, 3] {
        let s = count_series(k, 12, true, EnumConfig::default()).unwrap();
        write_series_csv(&s, File::create(&path).unwrap()).unwrap();
        let back = read_series_csv(k, File::open(&path).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(bounds_hold(&back));
    }
}

#[test]
fn table_file_has_one_row_per_length() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tables.csv");
    let rows = defect_tables(10, TableConfig::default()).unwrap();
    write_tables_csv(&rows, File::create(&path).unwrap()).unwrap();
    let lines: Vec<String> = BufReader::new(File::open(&path).unwrap())
        .lines()
        .map(Result::unwrap)
        .collect();
    assert_eq!(lines[0], TABLE_HEADER.join(","));
    assert_eq!(lines.len(), rows.len() + 1);
    assert!(lines[9].starts_with("8,1,1,0,"));
}
