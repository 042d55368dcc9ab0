//! Runs a JSON request through the cached experiment runner twice; the
//! second run is served from the cache.

use tu_lab::experiments::{run_experiment, Request, RunOptions};

const REQUEST: &str = r#"{
  "kind": "sweep",
  "nu": {"num": "1", "den": "3"},
  "r_values": [1, 2, 3, 4],
  "n_grid": [16, 64, 256, 1024]
}"#;

fn main() -> tu_lab::Result<()> {
    let request = Request::from_json(REQUEST)?;
    let dir = std::env::temp_dir().join("tu-lab-example");
    let _ = std::fs::remove_dir_all(&dir);
    let opts = RunOptions {
        cache_dir: dir.join("cache"),
        out_dir: Some(dir.join("sweep")),
    };
    for _ in 0..2 {
        let out = run_experiment(&request, &opts)?;
        println!(
            "hash {}  cache_hit {}  {}",
            &out.manifest.request_hash[..12],
            out.manifest.cache_hit,
            out.summary
        );
    }
    let csv = std::fs::read_to_string(dir.join("sweep").join("sweep.csv"))
        .expect("csv was written");
    print!("{csv}");
    Ok(())
}
