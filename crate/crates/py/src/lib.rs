//! Python bindings: inputs, polynomials, independence posets and Hilbert
//! function checks.

use arimat::arith::{arithmetic_tutte, arithmetic_tutte_at_y1, check_axioms};
use arimat::cli::{AbstractInput, InputSpec, MultiplicityEntry, RepresentationInput, StructureKind};
use arimat::gstruct::{torsion_free_reduction, validate_structure};
use arimat::poset::{build_poset, IndPoset};
use arimat::sr_ring::{hilbert_closed, hilbert_function, sr_ideal, verify_hilbert};
use arimat::ElemSet;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn structure_kind(s: &str) -> PyResult<StructureKind> {
    match s {
        "layer" => Ok(StructureKind::Layer),
        "cyclic" => Ok(StructureKind::Cyclic),
        _ => Err(value_error(format!("unknown structure {s:?}; use \"layer\" or \"cyclic\""))),
    }
}

/// A representation or an abstract matroid with multiplicity.
#[pyclass(name = "Input", module = "arimat")]
struct PyInput {
    spec: InputSpec,
}

#[pymethods]
impl PyInput {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = InputSpec::from_json(text).map_err(value_error)?;
        spec.load().map_err(value_error)?;
        Ok(PyInput { spec })
    }

    /// Columns in `Z^r ⊕ Z/q_1 ⊕ ..`, torsion coordinates last.
    #[staticmethod]
    #[pyo3(signature = (columns, torsion = vec![]))]
    fn representation(columns: Vec<Vec<i64>>, torsion: Vec<u64>) -> PyResult<Self> {
        let dim = columns.first().map_or(torsion.len(), Vec::len);
        let free_rank = dim
            .checked_sub(torsion.len())
            .ok_or_else(|| value_error("columns are shorter than the torsion part"))?;
        let spec = InputSpec::Representation(RepresentationInput { free_rank, torsion, columns });
        spec.load().map_err(value_error)?;
        Ok(PyInput { spec })
    }

    /// Sets use labels `1..=ground_size`; `multiplicity` is a list of
    /// `(set, m)` pairs.
    #[staticmethod]
    fn from_matroid(
        ground_size: usize,
        independent_sets: Vec<Vec<usize>>,
        multiplicity: Vec<(Vec<usize>, u64)>,
    ) -> PyResult<Self> {
        let spec = InputSpec::Abstract(AbstractInput {
            ground_size,
            independent_sets,
            multiplicity: multiplicity.into_iter().map(|(set, m)| MultiplicityEntry { set, m }).collect(),
        });
        spec.load().map_err(value_error)?;
        Ok(PyInput { spec })
    }

    fn to_json(&self) -> String {
        self.spec.to_canonical_json()
    }

    fn tutte(&self) -> PyResult<String> {
        Ok(self.spec.load().map_err(value_error)?.matroid().tutte().to_string())
    }

    /// The arithmetic Tutte polynomial; only its value at `y = 1` (in `x`)
    /// when the multiplicity is given on independent sets only.
    fn arithmetic_tutte(&self) -> PyResult<String> {
        let input = self.spec.load().map_err(value_error)?;
        let (mat, m) = (input.matroid(), input.multiplicity());
        if m.is_total() {
            Ok(arithmetic_tutte(&mat, &m).map_err(value_error)?.to_string())
        } else {
            Ok(arithmetic_tutte_at_y1(&mat, &m).map_err(value_error)?.fmt_var("x"))
        }
    }

    fn multiplicity(&self, set: Vec<usize>) -> PyResult<Option<u64>> {
        let s = ElemSet::from_labels(&set).ok_or_else(|| value_error("labels start at 1"))?;
        Ok(self.spec.load().map_err(value_error)?.multiplicity().get(s))
    }

    /// `(all_hold, report_text)`.
    fn check_axioms(&self) -> PyResult<(bool, String)> {
        let input = self.spec.load().map_err(value_error)?;
        let report = check_axioms(&input.matroid(), &input.multiplicity()).map_err(value_error)?;
        Ok((report.all_hold(), report.to_string()))
    }

    /// Diagnostics of the group structure; empty when valid.
    fn validate(&self, structure: &str) -> PyResult<Vec<String>> {
        let input = self.spec.load().map_err(value_error)?;
        let g = input.structure(structure_kind(structure)?).map_err(value_error)?;
        Ok(validate_structure(&g).diagnostics.iter().map(ToString::to_string).collect())
    }

    #[pyo3(signature = (structure, torsion_free = false))]
    fn poset(&self, structure: &str, torsion_free: bool) -> PyResult<PyPoset> {
        let input = self.spec.load().map_err(value_error)?;
        let g = input.structure(structure_kind(structure)?).map_err(value_error)?;
        let g = if torsion_free { torsion_free_reduction(&g) } else { g };
        Ok(PyPoset { inner: build_poset(&g).map_err(value_error)? })
    }
}

#[pyclass(name = "Poset", module = "arimat")]
struct PyPoset {
    inner: IndPoset,
}

#[pymethods]
impl PyPoset {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Labels of the elements covered by `label`.
    fn covers(&self, label: &str) -> PyResult<Vec<String>> {
        let i = self.inner.index_of_label(label).ok_or_else(|| value_error(format!("no element {label:?}")))?;
        Ok(self.inner.covers(i).iter().map(|&j| self.inner.label(j).to_string()).collect())
    }

    fn f_vector(&self) -> Vec<BigInt> {
        self.inner.f_vector()
    }

    fn h_vector(&self) -> Vec<BigInt> {
        self.inner.h_vector()
    }

    fn components(&self) -> Vec<PyPoset> {
        self.inner.components().into_iter().map(|inner| PyPoset { inner }).collect()
    }

    fn is_simplicial(&self) -> PyResult<bool> {
        self.inner.verify_simplicial().map_err(value_error)
    }

    fn dot(&self) -> String {
        self.inner.export_dot()
    }

    /// Generators of the Stanley-Reisner ideal, as text.
    fn ideal(&self) -> PyResult<Vec<String>> {
        let ideal = sr_ideal(&self.inner).map_err(value_error)?;
        Ok(ideal.render().lines().map(String::from).collect())
    }

    /// Dimensions of the graded pieces in degrees `0..=max_degree`.
    fn hilbert(&self, max_degree: usize) -> PyResult<Vec<usize>> {
        let ideal = sr_ideal(&self.inner).map_err(value_error)?;
        Ok(hilbert_function(&ideal, max_degree))
    }

    /// Coefficients of `h(t) / (1 - t)^r` in degrees `0..=max_degree`.
    fn hilbert_series(&self, max_degree: usize) -> Vec<BigInt> {
        hilbert_closed(&self.inner).coefficients(max_degree)
    }

    fn verify_hilbert(&self, max_degree: usize) -> PyResult<bool> {
        verify_hilbert(&self.inner, max_degree).map_err(value_error)
    }
}

#[pymodule]
#[pyo3(name = "arimat")]
fn arimat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInput>()?;
    m.add_class::<PyPoset>()?;
    Ok(())
}
