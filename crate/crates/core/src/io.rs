//! JSON file formats: algebras as structure-constant tables with scalar
//! literals, maps as column lists, elements as coordinate lists, subspaces as
//! basis lists. Scalar values travel as canonical literal strings, so files
//! are bit-exact across implementations.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraTags, Element};
use crate::linalg::Subspace;
use crate::maps::LinMap;
use crate::poly::Polynomial;
use crate::scalar::{format_scalar, parse_scalar, FieldKind, FieldSpec, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

/// Optional construction metadata; files without it stay valid.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TagsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_side: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangular_diagonal: Option<Vec<usize>>,
    /// Coefficients (scalar literals, ascending degree) of the minimal
    /// polynomial for extension algebras.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_poly: Option<Vec<String>>,
}

impl TagsFile {
    fn is_empty(&self) -> bool {
        self.matrix_side.is_none() && self.triangular_diagonal.is_none() && self.min_poly.is_none()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldFile,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `table[i][j]` = scalar-literal coordinates of b_i·b_j.
    pub table: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "TagsFile::is_empty")]
    pub tags: TagsFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    /// Column j = scalar-literal coordinates of the image of basis vector j.
    pub columns: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementFile {
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<String>>,
}

pub fn field_to_file(field: &FieldSpec) -> FieldFile {
    match field.kind() {
        FieldKind::Rationals => FieldFile {
            kind: "Q".into(),
            p: None,
        },
        FieldKind::PrimeField(p) => FieldFile {
            kind: "Fp".into(),
            p: Some(p),
        },
        FieldKind::RationalFunctions(p) => FieldFile {
            kind: "FpT".into(),
            p: Some(p),
        },
    }
}

pub fn field_from_file(file: &FieldFile) -> Result<FieldSpec> {
    match (file.kind.as_str(), file.p) {
        ("Q", _) => Ok(FieldSpec::rationals()),
        ("Fp", Some(p)) => FieldSpec::prime_field(p),
        ("FpT", Some(p)) => FieldSpec::rational_functions(p),
        ("Fp" | "FpT", None) => Err(Error::Format("field kind requires p".into())),
        (other, _) => Err(Error::Format(format!("unknown field kind `{other}`"))),
    }
}

fn parse_coords(field: &FieldSpec, lits: &[String]) -> Result<Vec<Scalar>> {
    lits.iter().map(|s| parse_scalar(s, field)).collect()
}

fn format_coords(coords: &[Scalar]) -> Vec<String> {
    coords.iter().map(format_scalar).collect()
}

pub fn algebra_to_file(alg: &Algebra) -> AlgebraFile {
    let table = alg
        .table()
        .iter()
        .map(|row| row.iter().map(|v| format_coords(v)).collect())
        .collect();
    let tags = alg.tags();
    AlgebraFile {
        field: field_to_file(&alg.field()),
        dim: alg.dim(),
        labels: alg.labels().to_vec(),
        table,
        tags: TagsFile {
            matrix_side: tags.matrix_side,
            triangular_diagonal: tags.triangular_diagonal.clone(),
            min_poly: tags.min_poly.as_ref().map(|f| format_coords(f.coeffs())),
        },
    }
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<Algebra> {
    let field = field_from_file(&file.field)?;
    if file.table.len() != file.dim {
        return Err(Error::MalformedTable("table length ≠ dim".into()));
    }
    let table = file
        .table
        .iter()
        .map(|row| row.iter().map(|v| parse_coords(&field, v)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let min_poly = match &file.tags.min_poly {
        Some(lits) => Some(Polynomial::new(field, parse_coords(&field, lits)?)),
        None => None,
    };
    let tags = AlgebraTags {
        matrix_side: file.tags.matrix_side,
        triangular_diagonal: file.tags.triangular_diagonal.clone(),
        min_poly,
    };
    Algebra::build(field, file.labels.clone(), table, tags)
}

pub fn map_to_file(map: &LinMap) -> MapFile {
    MapFile {
        columns: map.columns().iter().map(|c| format_coords(c)).collect(),
    }
}

pub fn map_from_file(alg: &Algebra, file: &MapFile) -> Result<LinMap> {
    let field = alg.field();
    let columns = file
        .columns
        .iter()
        .map(|c| parse_coords(&field, c))
        .collect::<Result<Vec<_>>>()?;
    LinMap::from_columns(alg, columns)
}

pub fn element_to_file(x: &Element) -> ElementFile {
    ElementFile {
        coords: format_coords(&x.coords),
    }
}

pub fn element_from_file(alg: &Algebra, file: &ElementFile) -> Result<Element> {
    let coords = parse_coords(&alg.field(), &file.coords)?;
    let x = Element::new(coords);
    alg.check_element(&x)?;
    Ok(x)
}

pub fn subspace_to_file(s: &Subspace) -> SubspaceFile {
    SubspaceFile {
        ambient_dim: s.ambient_dim(),
        basis: s.basis().iter().map(|v| format_coords(v)).collect(),
    }
}

pub fn subspace_from_file(field: &FieldSpec, file: &SubspaceFile) -> Result<Subspace> {
    let basis = file
        .basis
        .iter()
        .map(|v| {
            let coords = parse_coords(field, v)?;
            if coords.len() != file.ambient_dim {
                return Err(Error::AmbientMismatch);
            }
            Ok(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(*field, file.ambient_dim, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_roundtrip_preserves_structure() {
        for alg in [
            Algebra::matrix_algebra(FieldSpec::prime_field(3).unwrap(), 2),
            Algebra::upper_triangular(FieldSpec::rationals(), 3),
            crate::algebra::tests::ede_algebra(),
        ] {
            let file = algebra_to_file(&alg);
            let json = serde_json::to_string(&file).unwrap();
            let parsed: AlgebraFile = serde_json::from_str(&json).unwrap();
            let back = algebra_from_file(&parsed).unwrap();
            assert_eq!(back.dim(), alg.dim());
            assert_eq!(back.table(), alg.table());
            assert_eq!(back.labels(), alg.labels());
            assert_eq!(back.unit_coords(), alg.unit_coords());
            assert_eq!(back.tags().matrix_side, alg.tags().matrix_side);
        }
    }

    #[test]
    fn map_and_element_roundtrip() {
        let alg = Algebra::matrix_algebra(FieldSpec::rationals(), 2);
        let t = LinMap::transpose_map(&alg).unwrap();
        let back = map_from_file(&alg, &map_to_file(&t)).unwrap();
        assert_eq!(back, t);

        let x = alg.element_from_i64(&[1, -2, 0, 5]);
        let back = element_from_file(&alg, &element_to_file(&x)).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn subspace_file_roundtrip_is_canonical() {
        let field = FieldSpec::prime_field(5).unwrap();
        let s = Subspace::span(
            field,
            3,
            vec![
                vec![
                    Scalar::from_i64(&field, 2),
                    Scalar::from_i64(&field, 1),
                    Scalar::zero(&field),
                ],
                vec![
                    Scalar::from_i64(&field, 1),
                    Scalar::from_i64(&field, 1),
                    Scalar::one(&field),
                ],
            ],
        );
        let back = subspace_from_file(&field, &subspace_to_file(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn malformed_files_error() {
        let bad_field = FieldFile {
            kind: "R".into(),
            p: None,
        };
        assert!(field_from_file(&bad_field).is_err());
        let missing_p = FieldFile {
            kind: "Fp".into(),
            p: None,
        };
        assert!(field_from_file(&missing_p).is_err());
    }
}
