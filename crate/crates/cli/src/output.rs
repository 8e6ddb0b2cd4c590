use serde_json::Value;

/// What a command produced, renderable as a table, JSON, or CSV.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub fields: Vec<(String, String)>,
    /// Tabular part: header and rows.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    pub lines: Vec<String>,
    pub json: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("JSON value") + "\n",
            Format::Csv => self.csv(),
            Format::Human => self.human(),
        }
    }

    fn human(&self) -> String {
        let mut out = format!("{}\n", self.title);
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            out += &format!("  {k:<width$}  {v}\n");
        }
        if let Some((header, rows)) = &self.table {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    rows.iter()
                        .map(|r| r[i].len())
                        .chain([header[i].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect();
                format!("  {}\n", padded.join("  ").trim_end())
            };
            out += &line(header);
            for r in rows {
                out += &line(r);
            }
        }
        for l in &self.lines {
            out += &format!("{l}\n");
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some((header, rows)) => {
                w.write_record(header).unwrap();
                for r in rows {
                    w.write_record(r).unwrap();
                }
            }
            None => {
                w.write_record(self.fields.iter().map(|(k, _)| k)).unwrap();
                w.write_record(self.fields.iter().map(|(_, v)| v)).unwrap();
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_knot_names() {
        let mut r = Report::new("t");
        r.field("knot", "P(3,1,3)");
        r.field("lower", 2);
        assert_eq!(r.render(Format::Csv), "knot,lower\n\"P(3,1,3)\",2\n");
    }

    #[test]
    fn human_aligns() {
        let mut r = Report::new("bounds");
        r.field("u", 3);
        r.field("lower", 3);
        assert_eq!(r.render(Format::Human), "bounds\n  u      3\n  lower  3\n");
    }
}
