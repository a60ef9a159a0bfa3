use std::collections::HashSet;

use serde_json::Value;

use super::GroupoidError;

/// Largest accepted cyclic factor.
pub const MAX_FACTOR: u64 = 1 << 16;
/// Largest accepted number of factors at one point.
pub const MAX_FACTORS: usize = 16;
/// Largest accepted base.
pub const MAX_BASE: usize = 1024;

/// Abelian groupoid with source = target: a finite base with a product of
/// cyclic groups sitting over each point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct AbelianModel {
    base: Vec<String>,
    isotropy: Vec<Vec<u64>>,
}

impl AbelianModel {
    pub fn new(base: Vec<String>, isotropy: Vec<Vec<u64>>) -> Result<Self, GroupoidError> {
        if base.is_empty() {
            return Err(GroupoidError::InvalidModel("base is empty".into()));
        }
        if base.len() > MAX_BASE {
            return Err(GroupoidError::InvalidModel(format!(
                "base has {} points (max {MAX_BASE})",
                base.len()
            )));
        }
        if isotropy.len() != base.len() {
            return Err(GroupoidError::InvalidModel(
                "one isotropy list per base point is required".into(),
            ));
        }
        let mut seen = HashSet::new();
        for p in &base {
            if !seen.insert(p.as_str()) {
                return Err(GroupoidError::InvalidModel(format!("duplicate point '{p}'")));
            }
        }
        for (p, factors) in base.iter().zip(&isotropy) {
            if factors.len() > MAX_FACTORS {
                return Err(GroupoidError::InvalidModel(format!(
                    "point '{p}' has more than {MAX_FACTORS} factors"
                )));
            }
            for &f in factors {
                if f < 2 {
                    return Err(GroupoidError::InvalidModel(format!(
                        "point '{p}': cyclic factor {f} is below 2"
                    )));
                }
                if f > MAX_FACTOR {
                    return Err(GroupoidError::InvalidModel(format!(
                        "point '{p}': cyclic factor {f} exceeds {MAX_FACTOR}"
                    )));
                }
            }
        }
        Ok(AbelianModel { base, isotropy })
    }

    /// One point carrying the given cyclic factors.
    pub fn single(factors: &[u64]) -> Result<Self, GroupoidError> {
        Self::new(vec!["pt".into()], vec![factors.to_vec()])
    }

    /// Points `p0, p1, ...` with the given factor lists.
    pub fn from_lists(lists: &[&[u64]]) -> Result<Self, GroupoidError> {
        Self::new(
            (0..lists.len()).map(|i| format!("p{i}")).collect(),
            lists.iter().map(|l| l.to_vec()).collect(),
        )
    }

    /// Loads `{"base": [...], "isotropy": {point: [factors]}}`. Points
    /// missing from `isotropy` carry the trivial group.
    pub fn from_json(text: &str) -> Result<Self, GroupoidError> {
        let v: Value = serde_json::from_str(text).map_err(|e| GroupoidError::Json(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| GroupoidError::Json("model must be a JSON object".into()))?;
        for key in obj.keys() {
            if key != "base" && key != "isotropy" {
                return Err(GroupoidError::Json(format!("unknown field '{key}'")));
            }
        }
        let base_v = obj
            .get("base")
            .and_then(Value::as_array)
            .ok_or_else(|| GroupoidError::Json("'base' must be an array of strings".into()))?;
        if base_v.len() > MAX_BASE {
            return Err(GroupoidError::InvalidModel(format!(
                "base has {} points (max {MAX_BASE})",
                base_v.len()
            )));
        }
        let mut base = Vec::with_capacity(base_v.len());
        for p in base_v {
            base.push(
                p.as_str()
                    .ok_or_else(|| GroupoidError::Json("'base' entries must be strings".into()))?
                    .to_string(),
            );
        }
        let mut isotropy = vec![Vec::new(); base.len()];
        match obj.get("isotropy") {
            None | Some(Value::Null) => {}
            Some(Value::Object(map)) => {
                for (p, factors) in map {
                    let idx = base.iter().position(|b| b == p).ok_or_else(|| {
                        GroupoidError::InvalidModel(format!("isotropy given for unknown point '{p}'"))
                    })?;
                    let arr = factors
                        .as_array()
                        .ok_or_else(|| GroupoidError::Json(format!("isotropy of '{p}' must be an array")))?;
                    if arr.len() > MAX_FACTORS {
                        return Err(GroupoidError::InvalidModel(format!(
                            "point '{p}' has more than {MAX_FACTORS} factors"
                        )));
                    }
                    let mut list = Vec::with_capacity(arr.len());
                    for f in arr {
                        let f = f.as_u64().ok_or_else(|| {
                            GroupoidError::InvalidModel(format!("isotropy of '{p}': factors must be integers >= 2"))
                        })?;
                        list.push(f);
                    }
                    isotropy[idx] = list;
                }
            }
            Some(_) => {
                return Err(GroupoidError::Json("'isotropy' must be an object".into()));
            }
        }
        Self::new(base, isotropy)
    }

    pub fn to_json(&self) -> Value {
        let mut iso = serde_json::Map::new();
        for (p, f) in self.base.iter().zip(&self.isotropy) {
            iso.insert(p.clone(), Value::from(f.clone()));
        }
        serde_json::json!({ "base": self.base, "isotropy": iso })
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.base[p]
    }

    /// Cyclic factors over point `p`.
    pub fn moduli(&self, p: usize) -> &[u64] {
        &self.isotropy[p]
    }

    /// Order of the isotropy group at `p`.
    pub fn order(&self, p: usize) -> u64 {
        self.isotropy[p].iter().product()
    }

    /// Largest isotropy order over the base.
    pub fn max_order(&self) -> u64 {
        (0..self.len()).map(|p| self.order(p)).max().unwrap_or(1)
    }

    /// Concatenated factors along a tuple of points.
    pub fn tuple_moduli(&self, tuple: &[usize]) -> Vec<u64> {
        tuple.iter().flat_map(|&p| self.isotropy[p].iter().copied()).collect()
    }

    /// `(a,b)` style label of a point tuple.
    pub fn tuple_label(&self, tuple: &[usize]) -> String {
        let names: Vec<&str> = tuple.iter().map(|&p| self.base[p].as_str()).collect();
        format!("({})", names.join(","))
    }

    /// Short description such as `{pt:[2]}`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .base
            .iter()
            .zip(&self.isotropy)
            .map(|(p, f)| {
                let fs: Vec<String> = f.iter().map(|x| x.to_string()).collect();
                format!("{p}:[{}]", fs.join(","))
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_the_documented_shape() {
        let m = AbelianModel::from_json(r#"{"base": ["p","q"], "isotropy": {"p": [2], "q": [2,3]}}"#).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.moduli(1), &[2, 3]);
        assert_eq!(m.order(1), 6);
        assert_eq!(m.describe(), "{p:[2], q:[2,3]}");
    }

    #[test]
    fn missing_points_are_trivial() {
        let m = AbelianModel::from_json(r#"{"base": ["p","q"], "isotropy": {"q": [3]}}"#).unwrap();
        assert!(m.moduli(0).is_empty());
        let m = AbelianModel::from_json(r#"{"base": ["p"]}"#).unwrap();
        assert_eq!(m.order(0), 1);
    }

    #[test]
    fn rejects_bad_models() {
        for text in [
            r#"{"base": []}"#,
            r#"{"base": ["p","p"]}"#,
            r#"{"base": ["p"], "isotropy": {"p": [1]}}"#,
            r#"{"base": ["p"], "isotropy": {"p": [0]}}"#,
            r#"{"base": ["p"], "isotropy": {"p": [-2]}}"#,
            r#"{"base": ["p"], "isotropy": {"q": [2]}}"#,
            r#"{"base": ["p"], "isotropy": [2]}"#,
            r#"{"base": "p"}"#,
            r#"{"base": [1]}"#,
            r#"{"base": ["p"], "extra": 1}"#,
            r#"[]"#,
            r#"{"#,
        ] {
            assert!(AbelianModel::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn json_round_trip() {
        let m = AbelianModel::from_lists(&[&[2], &[3, 4]]).unwrap();
        let back = AbelianModel::from_json(&m.to_json().to_string()).unwrap();
        assert_eq!(back, m);
    }
}
