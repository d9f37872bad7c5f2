//! Ray lists: one vector per line in the scalar literal grammar, turned into
//! the orthogonality space of the projective points they span under the
//! standard form.
//!
//! ```text
//! # comments as in .osp
//! field: q2
//! 1, -1, r
//! (0, 1, 1)
//! ```

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::Error;
use crate::hermitian::{make_projective_fragment, HermitianSpace};
use crate::scalars::{parse_vector, Quad, RatFunc, ScalarError, StarField};
use crate::space::OrthoSpace;
use crate::toolkit::osp::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayField {
    /// Rationals, symbol-free.
    Q,
    /// `Q(r)` with `r² = 2`, identity involution.
    Q2,
    /// `Q(r)` with `r² = -1`, complex conjugation.
    Qi,
    /// Rational functions in `e`, identity involution.
    RatFunc,
}

impl RayField {
    pub const ALL: [RayField; 4] = [RayField::Q, RayField::Q2, RayField::Qi, RayField::RatFunc];

    pub fn name(self) -> &'static str {
        match self {
            RayField::Q => "q",
            RayField::Q2 => "q2",
            RayField::Qi => "qi",
            RayField::RatFunc => "ratfunc",
        }
    }
}

impl fmt::Display for RayField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RayField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        RayField::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown field `{s}` (expected q, q2, qi or ratfunc)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayDocument {
    pub field: Option<RayField>,
    /// Line number and text of each vector.
    pub vectors: Vec<(usize, String)>,
}

pub fn parse_ray_document(text: &str) -> Result<RayDocument, ParseError> {
    let mut field = None;
    let mut vectors = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let t = body.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix("field:") {
            let col = raw.find("field:").unwrap_or(0) + 1;
            let f = rest.trim().parse().map_err(|e: Error| ParseError {
                line: ln,
                col,
                message: e.to_string(),
            })?;
            field = Some(f);
            continue;
        }
        vectors.push((ln, body.to_owned()));
    }
    if vectors.is_empty() {
        return Err(ParseError {
            line: 1,
            col: 1,
            message: "no vectors".into(),
        });
    }
    Ok(RayDocument { field, vectors })
}

fn build<F: StarField>(doc: &RayDocument) -> Result<OrthoSpace, ParseError> {
    let mut vs: Vec<Vec<F>> = Vec::with_capacity(doc.vectors.len());
    for (ln, s) in &doc.vectors {
        let v = parse_vector::<F>(s).map_err(|e| match e {
            ScalarError::Parse { pos, message } => ParseError {
                line: *ln,
                col: pos + 1,
                message,
            },
            other => ParseError {
                line: *ln,
                col: 1,
                message: other.to_string(),
            },
        })?;
        if let Some(first) = vs.first() {
            if first.len() != v.len() {
                return Err(ParseError {
                    line: *ln,
                    col: 1,
                    message: format!("expected {} coordinates, found {}", first.len(), v.len()),
                });
            }
        }
        vs.push(v);
    }
    let h = HermitianSpace::<F>::standard(vs[0].len());
    let frag = make_projective_fragment(&h, &vs).map_err(|e| {
        let line = match e {
            crate::hermitian::HermitianError::IsotropicVector(i) => doc.vectors[i].0,
            _ => 1,
        };
        ParseError {
            line,
            col: 1,
            message: e.to_string(),
        }
    })?;
    Ok(frag.space)
}

/// Builds the orthogonality space of a ray list; an explicit `field` wins
/// over the document's `field:` line, and rationals are the fallback.
pub fn rays_to_space(text: &str, field: Option<RayField>) -> Result<OrthoSpace, ParseError> {
    let doc = parse_ray_document(text)?;
    match field.or(doc.field).unwrap_or(RayField::Q) {
        RayField::Q => build::<BigRational>(&doc),
        RayField::Q2 => build::<Quad<2, false>>(&doc),
        RayField::Qi => build::<Quad<-1, true>>(&doc),
        RayField::RatFunc => build::<RatFunc>(&doc),
    }
}
