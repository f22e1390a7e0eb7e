use pyo3::prelude::*;

#[pymodule]
fn tenscat_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
