//! Shipped configurations that regenerate the published figure data.

/// `(name, config text)` for every shipped preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("fig2", include_str!("../presets/fig2.conf")),
    ("fig4", include_str!("../presets/fig4.conf")),
    ("qfig", include_str!("../presets/qfig.conf")),
    ("qfig-torus", include_str!("../presets/qfig-torus.conf")),
    ("table2", include_str!("../presets/table2.conf")),
    ("backaction", include_str!("../presets/backaction.conf")),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, Scheme};

    #[test]
    fn every_preset_parses() {
        for (name, text) in PRESETS {
            parse_config(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(preset("nope").is_none());
    }

    #[test]
    fn table2_values() {
        let cfg = parse_config(preset("table2").unwrap()).unwrap();
        assert_eq!(cfg.scheme, Scheme::Scheme2);
        assert_eq!(cfg.param("magnet.radius"), 12e-6);
        assert_eq!(cfg.param("magnet.Br"), 1.2);
        assert_eq!(cfg.param("ring.r"), 5e-6);
        assert_eq!(cfg.param("ring.rho"), 2700.0);
        assert_eq!(cfg.param("ring.I"), 1e-6);
        assert_eq!(cfg.series.unwrap().values, vec![180e-6, 183.4e-6]);
    }
}
