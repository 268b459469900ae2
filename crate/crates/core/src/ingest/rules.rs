//! Rule-based GenAI labeling of work experiences.

use serde::{Deserialize, Serialize};

use super::profiles::WorkExperience;
use super::IngestError;

const DEFAULT_RULES: &str = include_str!("../../data/genai_rules.txt");

/// Keywords no longer than this must match as whole words.
const SHORT_TOKEN_CHARS: usize = 4;

const LEGAL_SUFFIXES: &[&str] = &[
    "inc", "incorporated", "llc", "ltd", "limited", "corp", "corporation", "co", "plc", "gmbh",
];

/// Keyword and company lists. Keywords are stored lowercased, companies
/// normalized with [`normalize_company`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenAiRuleSet {
    keywords: Vec<String>,
    companies: Vec<String>,
}

/// Lowercases, turns punctuation into spaces and drops trailing legal
/// suffixes such as "Inc" or "LLC".
pub fn normalize_company(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect::<String>()
        .to_lowercase();
    let mut tokens: Vec<&str> = cleaned.split_whitespace().collect();
    while tokens.len() > 1 && LEGAL_SUFFIXES.contains(tokens.last().unwrap()) {
        tokens.pop();
    }
    tokens.join(" ")
}

impl GenAiRuleSet {
    pub fn new<K, C>(keywords: K, companies: C) -> Result<Self, IngestError>
    where
        K: IntoIterator,
        K::Item: AsRef<str>,
        C: IntoIterator,
        C::Item: AsRef<str>,
    {
        let mut keywords: Vec<String> = keywords
            .into_iter()
            .map(|k| k.as_ref().trim().to_lowercase())
            .filter(|k| !k.is_empty())
            .collect();
        let mut companies: Vec<String> = companies
            .into_iter()
            .map(|c| normalize_company(c.as_ref()))
            .filter(|c| !c.is_empty())
            .collect();
        keywords.sort();
        keywords.dedup();
        companies.sort();
        companies.dedup();
        if keywords.is_empty() && companies.is_empty() {
            return Err(IngestError::Rules("rule set is empty".into()));
        }
        Ok(GenAiRuleSet { keywords, companies })
    }

    /// Parses the `[keywords]` / `[companies]` text format. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, IngestError> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Keywords,
            Companies,
        }
        let mut section = Section::None;
        let mut keywords = Vec::new();
        let mut companies = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.to_ascii_lowercase().as_str() {
                "[keywords]" => section = Section::Keywords,
                "[companies]" => section = Section::Companies,
                _ if line.starts_with('[') => {
                    return Err(IngestError::Rules(format!("line {}: unknown section {line}", i + 1)))
                }
                _ => match section {
                    Section::Keywords => keywords.push(line.to_string()),
                    Section::Companies => companies.push(line.to_string()),
                    Section::None => {
                        return Err(IngestError::Rules(format!("line {}: entry before any section", i + 1)))
                    }
                },
            }
        }
        GenAiRuleSet::new(keywords, companies)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("[keywords]\n");
        for k in &self.keywords {
            out.push_str(k);
            out.push('\n');
        }
        out.push_str("\n[companies]\n");
        for c in &self.companies {
            out.push_str(c);
            out.push('\n');
        }
        out
    }

    pub fn keywords(&self) -> &[String] {
        &self.keywords
    }

    pub fn companies(&self) -> &[String] {
        &self.companies
    }

    pub fn matches_company(&self, company: &str) -> bool {
        let n = normalize_company(company);
        !n.is_empty() && self.companies.binary_search(&n).is_ok()
    }

    pub fn matches_text(&self, text: &str) -> bool {
        let lower = text.to_lowercase();
        self.keywords.iter().any(|k| contains_keyword(&lower, k))
    }
}

impl Default for GenAiRuleSet {
    fn default() -> Self {
        GenAiRuleSet::parse(DEFAULT_RULES).expect("bundled rules parse")
    }
}

fn is_word_char(c: Option<char>) -> bool {
    c.is_some_and(char::is_alphanumeric)
}

/// Substring match; short tokens (LLM, RAG, ...) need word boundaries on
/// both sides, allowing a plural "s".
fn contains_keyword(haystack: &str, keyword: &str) -> bool {
    if keyword.chars().count() > SHORT_TOKEN_CHARS {
        return haystack.contains(keyword);
    }
    haystack.match_indices(keyword).any(|(pos, _)| {
        let before = haystack[..pos].chars().next_back();
        let mut after = haystack[pos + keyword.len()..].chars();
        let next = after.next();
        if is_word_char(before) {
            return false;
        }
        match next {
            Some('s') => !is_word_char(after.next()),
            other => !is_word_char(other),
        }
    })
}

/// True when the company is listed or the title/description contains a
/// keyword.
pub fn label_genai(experience: &WorkExperience, rules: &GenAiRuleSet) -> bool {
    rules.matches_company(&experience.company)
        || rules.matches_text(&experience.title)
        || rules.matches_text(&experience.description)
}
