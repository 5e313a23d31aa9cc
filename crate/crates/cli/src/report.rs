use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key=value`, one per line.
    Kv,
    /// Keys padded to a common width, for reading.
    Human,
}

/// Collected output of a subcommand; free-form lines keep their position.
#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<Entry>,
}

#[derive(Debug)]
enum Entry {
    Pair(String, String),
    Line(String),
}

impl Report {
    pub fn kv(&mut self, key: &str, value: impl ToString) -> &mut Report {
        self.entries.push(Entry::Pair(key.to_string(), value.to_string()));
        self
    }

    pub fn line(&mut self, line: impl Into<String>) -> &mut Report {
        self.entries.push(Entry::Line(line.into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        let width = self
            .entries
            .iter()
            .filter_map(|e| match e {
                Entry::Pair(k, _) => Some(k.len()),
                Entry::Line(_) => None,
            })
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            match (e, format) {
                (Entry::Pair(k, v), Format::Kv) => out.push_str(&format!("{k}={v}\n")),
                (Entry::Pair(k, v), Format::Human) => out.push_str(&format!("{k:<width$}  {v}\n")),
                (Entry::Line(l), _) => {
                    out.push_str(l);
                    out.push('\n');
                }
            }
        }
        out
    }
}
