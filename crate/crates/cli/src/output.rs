//! Row model and text/CSV rendering.

/// One reported quantity, optionally checked against a reference value.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRow {
    pub scenario: String,
    pub quantity: String,
    pub value: f64,
    pub units: String,
    pub golden: Option<f64>,
    /// Present exactly when a reference value is present.
    pub within_tolerance: Option<bool>,
}

impl OutputRow {
    pub fn plain(scenario: &str, quantity: &str, value: f64, units: &str) -> Self {
        Self {
            scenario: scenario.to_owned(),
            quantity: quantity.to_owned(),
            value,
            units: units.to_owned(),
            golden: None,
            within_tolerance: None,
        }
    }
}

/// Output format of the rendered rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

fn pass_label(row: &OutputRow) -> &'static str {
    match row.within_tolerance {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

/// Renders rows as CSV with the fixed column set
/// `scenario,quantity,value,units,golden,pass`. Values use the shortest
/// representation that parses back to the identical double.
pub fn render_csv(rows: &[OutputRow]) -> String {
    let mut out = String::from("scenario,quantity,value,units,golden,pass\n");
    for row in rows {
        let golden = row.golden.map(|g| g.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.scenario,
            row.quantity,
            row.value,
            row.units,
            golden,
            pass_label(row)
        ));
    }
    out
}

/// Renders rows as an aligned text table.
pub fn render_text(rows: &[OutputRow]) -> String {
    let header = ["scenario", "quantity", "value", "units", "golden", "pass"];
    let mut cells: Vec<[String; 6]> = Vec::with_capacity(rows.len());
    for row in rows {
        cells.push([
            row.scenario.clone(),
            row.quantity.clone(),
            format!("{:.6e}", row.value),
            row.units.clone(),
            row.golden.map(|g| format!("{g:.3e}")).unwrap_or_default(),
            pass_label(row).to_owned(),
        ]);
    }

    let mut widths = header.map(str::len);
    for row in &cells {
        for (width, cell) in widths.iter_mut().zip(row.iter()) {
            *width = (*width).max(cell.len());
        }
    }

    let mut out = String::new();
    let mut push_line = |cols: &[String; 6]| {
        let mut line = String::new();
        for (i, (cell, width)) in cols.iter().zip(widths.iter()).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{cell:<width$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_line(&header.map(str::to_owned));
    for row in &cells {
        push_line(row);
    }
    out
}

/// Renders with the requested format.
pub fn render(rows: &[OutputRow], format: Format) -> String {
    match format {
        Format::Text => render_text(rows),
        Format::Csv => render_csv(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<OutputRow> {
        vec![
            OutputRow {
                scenario: "demo".into(),
                quantity: "f_r - 1".into(),
                value: -3.221325e-5,
                units: "-".into(),
                golden: Some(-3.22e-5),
                within_tolerance: Some(true),
            },
            OutputRow::plain("demo", "kappa", 3.4351e13, "m^2"),
        ]
    }

    #[test]
    fn csv_blanks_absent_golden_and_pass() {
        let csv = render_csv(&sample());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "scenario,quantity,value,units,golden,pass");
        assert!(lines[1].ends_with(",-0.0000322,true"));
        assert!(lines[2].ends_with(",,"));
    }

    #[test]
    fn text_table_is_aligned() {
        let text = render_text(&sample());
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("scenario"));
        let col = lines[0].find("quantity").unwrap();
        for line in &lines[1..] {
            assert_eq!(line.as_bytes().get(col - 1), Some(&b' '));
        }
    }
}
