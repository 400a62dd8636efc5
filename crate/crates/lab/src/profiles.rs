//! Named catalog of analytic profiles used for right-hand sides and
//! exterior data in configuration files.
//!
//! A spec string reads `name(key=value, ...)`; omitted keys take their
//! defaults, e.g. `gaussian(width=0.5)` or plain `constant`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use fraclap_core::profile::{
    AbsPower, Affine, Bump, Constant, Cosine, FarField, Gaussian, Profile,
};

use crate::error::{LabError, Result};

/// Builds one kind of profile from validated parameters.
pub trait ProfileFactory: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parameter names with their defaults.
    fn params(&self) -> &'static [(&'static str, f64)];

    fn build(&self, args: &BTreeMap<&'static str, f64>) -> Result<Box<dyn Profile>>;
}

macro_rules! factory {
    ($ty:ident, $name:literal, [$(($key:literal, $def:expr)),*], |$a:ident| $body:expr) => {
        struct $ty;

        impl ProfileFactory for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn params(&self) -> &'static [(&'static str, f64)] {
                &[$(($key, $def)),*]
            }

            fn build(&self, $a: &BTreeMap<&'static str, f64>) -> Result<Box<dyn Profile>> {
                Ok(Box::new($body))
            }
        }
    };
}

factory!(ConstantFactory, "constant", [("value", 1.0)], |a| {
    Constant { value: a["value"] }
});
factory!(
    AffineFactory,
    "affine",
    [("slope", 1.0), ("intercept", 0.0)],
    |a| Affine {
        slope: a["slope"],
        intercept: a["intercept"]
    }
);
factory!(
    BumpFactory,
    "bump",
    [("center", 0.0), ("radius", 0.5), ("height", 1.0)],
    |a| Bump {
        center: a["center"],
        radius: a["radius"],
        height: a["height"]
    }
);
factory!(
    GaussianFactory,
    "gaussian",
    [("center", 0.0), ("width", 1.0), ("height", 1.0)],
    |a| Gaussian {
        center: a["center"],
        width: a["width"],
        height: a["height"]
    }
);
factory!(
    CosineFactory,
    "cosine",
    [("freq", 1.0), ("amplitude", 1.0), ("phase", 0.0)],
    |a| Cosine {
        freq: a["freq"],
        amplitude: a["amplitude"],
        phase: a["phase"]
    }
);
factory!(
    AbsPowerFactory,
    "abs-power",
    [("center", 0.0), ("exponent", 0.5), ("scale", 1.0)],
    |a| AbsPower {
        center: a["center"],
        exponent: a["exponent"],
        scale: a["scale"]
    }
);

pub struct ProfileCatalog {
    entries: BTreeMap<&'static str, Box<dyn ProfileFactory>>,
}

impl ProfileCatalog {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, factory: Box<dyn ProfileFactory>) {
        self.entries.insert(factory.name(), factory);
    }

    pub fn builtin() -> &'static ProfileCatalog {
        static CATALOG: OnceLock<ProfileCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            let mut c = ProfileCatalog::empty();
            c.register(Box::new(ConstantFactory));
            c.register(Box::new(AffineFactory));
            c.register(Box::new(BumpFactory));
            c.register(Box::new(GaussianFactory));
            c.register(Box::new(CosineFactory));
            c.register(Box::new(AbsPowerFactory));
            c
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn ProfileFactory> {
        self.entries.get(name).map(|f| f.as_ref())
    }

    /// Parses a spec string and builds the profile.
    pub fn build(&self, spec: &ProfileSpec) -> Result<Box<dyn Profile>> {
        let factory = self.get(&spec.name).ok_or_else(|| {
            LabError::Config(format!(
                "unknown profile `{}` (known: {})",
                spec.name,
                self.names().join(", ")
            ))
        })?;
        let mut args = BTreeMap::new();
        for (key, def) in factory.params() {
            args.insert(*key, *def);
        }
        for (key, value) in &spec.args {
            let slot = factory
                .params()
                .iter()
                .find(|(k, _)| k == key)
                .ok_or_else(|| {
                    LabError::Config(format!("profile `{}` has no parameter `{key}`", spec.name))
                })?;
            args.insert(slot.0, *value);
        }
        factory.build(&args)
    }
}

/// A parsed `name(key=value, ...)` string.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSpec {
    pub name: String,
    pub args: Vec<(String, f64)>,
}

impl ProfileSpec {
    pub fn new(name: &str, args: &[(&str, f64)]) -> Self {
        Self {
            name: name.to_string(),
            args: args.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || LabError::Config(format!("malformed profile `{text}`"));
        let (name, rest) = match text.find('(') {
            Some(i) => {
                let inner = text[i + 1..].strip_suffix(')').ok_or_else(bad)?;
                (text[..i].trim(), inner)
            }
            None => (text, ""),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(bad());
        }
        let mut args = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(bad)?;
            let v: f64 = v.trim().parse().map_err(|_| {
                LabError::Config(format!("profile `{name}`: `{}` is not a number", v.trim()))
            })?;
            args.push((k.trim().to_string(), v));
        }
        Ok(Self {
            name: name.to_string(),
            args,
        })
    }

    /// True for `constant(value=0)`.
    pub fn is_zero(&self) -> bool {
        self.name == "constant" && self.args.iter().any(|(k, v)| k == "value" && *v == 0.0)
    }

    pub fn is_unit_constant(&self) -> bool {
        self.name == "constant" && self.args.iter().all(|(k, v)| k != "value" || *v == 1.0)
    }
}

impl std::fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

/// `base + weight · extra`.
#[derive(Debug)]
pub struct Perturbed<'a> {
    pub base: &'a dyn Profile,
    pub extra: &'a dyn Profile,
    pub weight: f64,
}

impl Profile for Perturbed<'_> {
    fn value(&self, x: f64) -> f64 {
        self.base.value(x) + self.weight * self.extra.value(x)
    }

    fn d1(&self, x: f64) -> f64 {
        self.base.d1(x) + self.weight * self.extra.d1(x)
    }

    fn d2(&self, x: f64) -> f64 {
        self.base.d2(x) + self.weight * self.extra.d2(x)
    }

    fn kinks(&self) -> Vec<f64> {
        let mut k = self.base.kinks();
        k.extend(self.extra.kinks());
        k
    }

    fn far_field(&self, x: f64, radius: f64) -> FarField {
        match (
            self.base.far_field(x, radius),
            self.extra.far_field(x, radius),
        ) {
            (FarField::Exact(a), FarField::Exact(b)) => FarField::Exact(a + self.weight * b),
            (FarField::Exact(a) | FarField::Mean(a), FarField::Exact(b) | FarField::Mean(b)) => {
                FarField::Mean(a + self.weight * b)
            }
            _ => FarField::Unknown,
        }
    }

    fn sup_norm(&self) -> Option<f64> {
        Some(self.base.sup_norm()? + self.weight.abs() * self.extra.sup_norm()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs_with_and_without_arguments() {
        let s = ProfileSpec::parse("gaussian(center=0.2, width = 0.5)").unwrap();
        assert_eq!(s.name, "gaussian");
        assert_eq!(s.args, vec![("center".into(), 0.2), ("width".into(), 0.5)]);
        let c = ProfileSpec::parse(" constant ").unwrap();
        assert!(c.args.is_empty() && c.is_unit_constant());
        assert!(ProfileSpec::parse("bump(center=)").is_err());
        assert!(ProfileSpec::parse("bump(center=1").is_err());
        assert!(ProfileSpec::parse("constant(value=0)").unwrap().is_zero());
    }

    #[test]
    fn builds_with_defaults_and_rejects_unknowns() {
        let cat = ProfileCatalog::builtin();
        let g = cat
            .build(&ProfileSpec::parse("gaussian(width=0.5)").unwrap())
            .unwrap();
        assert!((g.value(0.5) - (-1.0f64).exp()).abs() < 1e-15);
        assert!(cat.build(&ProfileSpec::parse("sinc").unwrap()).is_err());
        let err = cat
            .build(&ProfileSpec::parse("bump(width=1)").unwrap())
            .unwrap_err();
        assert!(err.to_string().contains("width"));
        assert_eq!(cat.names().len(), 6);
    }

    #[test]
    fn display_round_trips() {
        let s = ProfileSpec::new("bump", &[("center", 0.1), ("radius", 0.4)]);
        assert_eq!(ProfileSpec::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn perturbed_adds_pointwise() {
        let a = Constant { value: 1.0 };
        let b = Gaussian {
            center: 0.0,
            width: 1.0,
            height: 1.0,
        };
        let p = Perturbed {
            base: &a,
            extra: &b,
            weight: 0.5,
        };
        assert_eq!(p.value(0.0), 1.5);
        assert_eq!(p.d2(0.0), -1.0);
    }
}
