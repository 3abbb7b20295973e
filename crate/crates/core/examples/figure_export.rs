//! Writes every figure dataset as CSV into a directory (default: ./figures).

use qubit_entangle::sweep::FigureOverrides;
use qubit_entangle::{figure_dataset, FigureId};

fn main() -> qubit_entangle::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    std::fs::create_dir_all(&dir)?;
    for id in FigureId::ALL {
        let ds = figure_dataset(id, &FigureOverrides::default())?;
        let path = std::path::Path::new(&dir).join(format!("{}.csv", id.name()));
        std::fs::write(&path, ds.to_csv()?)?;
        println!(
            "{} {} rows, columns {:?}",
            path.display(),
            ds.rows.len(),
            ds.columns
        );
    }
    Ok(())
}
