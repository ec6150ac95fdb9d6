//! Runs the four canned figure jobs and prints a coarse slice of each
//! surface. Pass a directory to also write fig1.csv ... fig4.csv there.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use twomode::cli::write_csv;
use twomode::experiments::{figure_job, run_sweep};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    for fig in 1..=4 {
        let job = figure_job(fig)?;
        let table = run_sweep(&job)?;
        let measure = job.measures()[0];
        println!("figure {fig}: {measure} on {} cells", table.rows().len());
        for temp in [0.0, 1.0, 4.0] {
            let slice: Vec<String> = table
                .rows_at_temperature(temp)
                .filter(|r| r.t.fract() == 0.0 && (r.t as u32).is_multiple_of(5))
                .map(|r| format!("{:8.4}", r.values[0]))
                .collect();
            println!("  T = {temp}: t = 0,5,10,15,20 -> {}", slice.join(" "));
        }
        if let Some(dir) = &out_dir {
            std::fs::create_dir_all(dir)?;
            let mut w = BufWriter::new(File::create(dir.join(format!("fig{fig}.csv")))?);
            write_csv(&table, &mut w)?;
        }
    }
    Ok(())
}
