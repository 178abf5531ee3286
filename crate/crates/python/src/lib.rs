//! Python bindings for `gridknot`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gridknot::bench::{self, Field, ScalingRow};
use gridknot::diagram::{build_diagram, enumerate_fields, oracle_shear_diagram, to_gauss};
use gridknot::fast_count::{self, CountingInstance, Token};
use gridknot::grid::{self, Axis};
use gridknot::invariants::{self, apply_functional, omega_lk, PhiVector};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated grid knot or link in an `L x L x L` box.
#[pyclass(name = "GridLink", module = "pygridknot", frozen)]
struct PyGridLink {
    inner: grid::GridLink,
}

#[pymethods]
impl PyGridLink {
    /// Parses and validates the text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        grid::parse_grid_link(text).map(|inner| Self { inner }).map_err(value_error)
    }

    #[staticmethod]
    #[pyo3(signature = (size, components = 1, seed = 0, mix_steps = 10_000))]
    fn random(size: i32, components: usize, seed: u64, mix_steps: u64) -> PyResult<Self> {
        grid::random_grid_link(size, components, seed, mix_steps).map(|inner| Self { inner }).map_err(value_error)
    }

    #[staticmethod]
    fn unknot(size: i32) -> Self {
        Self { inner: grid::make_unknot(size) }
    }

    #[staticmethod]
    fn hopf() -> Self {
        Self { inner: grid::make_hopf_link() }
    }

    #[staticmethod]
    fn torus(k: i32) -> Self {
        Self { inner: grid::make_torus_link(k) }
    }

    #[staticmethod]
    fn dense_fill(size: i32) -> Self {
        Self { inner: grid::make_dense_fill(size) }
    }

    fn serialize(&self) -> String {
        grid::serialize_grid_link(&self.inner)
    }

    #[getter]
    fn size(&self) -> i32 {
        self.inner.size()
    }

    #[getter]
    fn volume(&self) -> i64 {
        self.inner.volume()
    }

    #[getter]
    fn component_count(&self) -> usize {
        self.inner.component_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    /// Mirror image in the plane normal to `axis` ("x", "y" or "z").
    fn mirrored(&self, axis: &str) -> PyResult<Self> {
        let axis = match axis {
            "x" => Axis::X,
            "y" => Axis::Y,
            "z" => Axis::Z,
            _ => return Err(value_error(format!("unknown axis `{axis}`"))),
        };
        Ok(Self { inner: self.inner.mirrored(axis) })
    }

    fn with_reversed_component(&self, index: usize) -> PyResult<Self> {
        if index >= self.inner.component_count() {
            return Err(value_error(format!("no component {index}")));
        }
        Ok(Self { inner: self.inner.with_reversed_component(index) })
    }

    fn field_count(&self) -> usize {
        enumerate_fields(&self.inner).len()
    }

    /// Crossings of the canonical diagram in endpoint order, as
    /// `(field, type code, sign, over t, under t)`.
    fn crossings(&self) -> Vec<(String, u8, i8, usize, usize)> {
        build_diagram(&self.inner)
            .crossings
            .iter()
            .map(|c| (c.field.to_string(), c.crossing_type.code(), c.sign, c.over.t, c.under.t))
            .collect()
    }

    fn crossing_count(&self) -> usize {
        build_diagram(&self.inner).n()
    }

    /// Whether the exact projection with shear `(a, b)`, each a
    /// `(numerator, denominator)` pair, matches the canonical diagram.
    fn oracle_agrees(&self, a: (i64, i64), b: (i64, i64)) -> PyResult<bool> {
        if a.1 == 0 || b.1 == 0 {
            return Err(value_error("zero denominator"));
        }
        let exact =
            oracle_shear_diagram(&self.inner, Ratio::new(a.0, a.1), Ratio::new(b.0, b.1)).map_err(value_error)?;
        Ok(exact.signature() == build_diagram(&self.inner).signature())
    }

    fn gauss(&self) -> String {
        to_gauss(&build_diagram(&self.inner)).to_string()
    }

    fn lk_2d(&self) -> PyResult<i64> {
        invariants::lk_2d(&build_diagram(&self.inner)).map_err(value_error)
    }

    fn lk_3d(&self) -> PyResult<i64> {
        invariants::lk_3d(&self.inner).map_err(value_error)
    }

    /// Linking number read off the order-1 subdiagram counts.
    fn lk_from_phi(&self) -> PyResult<i64> {
        let phi = invariants::phi_2d(&to_gauss(&build_diagram(&self.inner)), 1).map_err(value_error)?;
        let value = apply_functional(&omega_lk(), &phi);
        if !value.is_integer() {
            return Err(value_error(format!("non-integral value {value}")));
        }
        value.to_integer().try_into().map_err(value_error)
    }

    /// Subdiagram counts keyed by Gauss code text.
    fn phi_2d(&self, d: usize) -> PyResult<BTreeMap<String, BigUint>> {
        let phi = invariants::phi_2d(&to_gauss(&build_diagram(&self.inner)), d).map_err(value_error)?;
        Ok(phi_entries(&phi))
    }

    fn phi_3d(&self, d: usize) -> PyResult<BTreeMap<String, BigUint>> {
        let phi = fast_count::phi_3d(&self.inner, d).map_err(value_error)?;
        Ok(phi_entries(&phi))
    }

    fn __repr__(&self) -> String {
        format!(
            "GridLink(L={}, components={}, edges={})",
            self.inner.size(),
            self.inner.component_count(),
            self.inner.edge_count()
        )
    }
}

fn phi_entries(phi: &PhiVector) -> BTreeMap<String, BigUint> {
    phi.entries.iter().map(|(code, count)| (code.to_string(), count.clone())).collect()
}

/// Number of strictly increasing choices, one position per slot.
#[pyfunction]
fn count_increasing(slots: Vec<Vec<i64>>) -> BigUint {
    fast_count::count_increasing(&slots)
}

fn instance(size: i32, slots: Vec<Vec<(i64, i32)>>, conditions: Vec<(usize, usize)>) -> PyResult<CountingInstance> {
    let slots = slots.into_iter().map(|s| s.into_iter().map(|(t, z)| Token::new(t, z)).collect()).collect();
    let inst = CountingInstance::new(size, slots, conditions);
    inst.check().map_err(value_error)?;
    Ok(inst)
}

/// Count with height conditions `z[lo] < z[hi]`; slots hold `(t, z)` pairs.
#[pyfunction]
fn count_with_z(size: i32, slots: Vec<Vec<(i64, i32)>>, conditions: Vec<(usize, usize)>) -> PyResult<BigUint> {
    Ok(fast_count::count_with_z(&instance(size, slots, conditions)?))
}

#[pyfunction]
fn brute_count(size: i32, slots: Vec<Vec<(i64, i32)>>, conditions: Vec<(usize, usize)>) -> PyResult<BigUint> {
    fast_count::brute_count(&instance(size, slots, conditions)?).map_err(value_error)
}

/// Timing rows as `(op, L, V, edges, n, time_ns or None, reps, seed)`.
#[pyfunction]
#[pyo3(signature = (op, sizes, seeds = vec![1], reps = 5))]
#[allow(clippy::type_complexity)]
fn run_scaling(
    op: &str,
    sizes: Vec<i32>,
    seeds: Vec<u64>,
    reps: usize,
) -> PyResult<Vec<(String, i64, i64, usize, usize, Option<u128>, usize, u64)>> {
    let rows = bench::run_scaling(op, &sizes, &seeds, reps).map_err(value_error)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.op.to_string(), r.size, r.volume, r.edges, r.n, r.time_ns, r.reps, r.seed))
        .collect())
}

fn field(name: &str) -> PyResult<Field> {
    Ok(match name {
        "L" => Field::Size,
        "V" => Field::Volume,
        "edges" => Field::Edges,
        "n" => Field::Crossings,
        "time_ns" => Field::Time,
        _ => return Err(value_error(format!("unknown column `{name}`"))),
    })
}

/// Log-log slope and r^2 of `y` against `x` over rows from [`run_scaling`].
#[pyfunction]
#[allow(clippy::type_complexity)]
fn fit_loglog(
    rows: Vec<(String, i64, i64, usize, usize, Option<u128>, usize, u64)>,
    x: &str,
    y: &str,
) -> PyResult<(f64, f64)> {
    let rows: Vec<ScalingRow> = rows
        .into_iter()
        .map(|(op, size, volume, edges, n, time_ns, reps, seed)| {
            Ok(ScalingRow { op: op.parse().map_err(value_error)?, size, volume, edges, n, time_ns, reps, seed })
        })
        .collect::<PyResult<_>>()?;
    bench::fit_loglog(&rows, field(x)?, field(y)?).map_err(value_error)
}

#[pymodule]
fn pygridknot(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGridLink>()?;
    m.add_function(wrap_pyfunction!(count_increasing, m)?)?;
    m.add_function(wrap_pyfunction!(count_with_z, m)?)?;
    m.add_function(wrap_pyfunction!(brute_count, m)?)?;
    m.add_function(wrap_pyfunction!(run_scaling, m)?)?;
    m.add_function(wrap_pyfunction!(fit_loglog, m)?)?;
    Ok(())
}
