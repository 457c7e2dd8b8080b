use std::io::Write;

use super::{Observable, Orbit};
use crate::Result;

/// Writes `n, t_0, ..., t_{d-1}, re, im` rows for `n` in `start..start + len`.
pub fn write_orbit_csv<W: Write>(out: W, orbit: &Orbit, f: &Observable, start: i64, len: usize) -> Result<()> {
    let dim = orbit.system().nilmanifold().dim();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string()];
    header.extend((0..dim).map(|i| format!("t{i}")));
    header.extend(["re".to_string(), "im".to_string()]);
    w.write_record(&header).map_err(csv_err)?;
    let mut c = orbit.cursor();
    for k in start..start + len as i64 {
        let t = c.get(k);
        let v = f.eval(t);
        let mut row = vec![k.to_string()];
        row.extend(t.iter().map(|x| format!("{x:.17e}")));
        row.extend([format!("{:.17e}", v.re), format!("{:.17e}", v.im)]);
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e))
}
