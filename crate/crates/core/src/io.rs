//! JSON game files.
//!
//! ```json
//! {"n": 3, "worths": {"1": "6", "1,2": "12", "1,3": "6/1", "1,2,3": "18.0"}}
//! ```
//!
//! Keys are ascending 1-based player lists; values are strings holding an
//! integer, a decimal or a `p/q` fraction. Unlisted coalitions are worth 0.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::TuGame;
use crate::scalar::{parse_rational, Scalar};
use crate::Game;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGameFile {
    n: usize,
    worths: RawEntries,
}

/// Map entries in file order, duplicates preserved so they can be rejected.
#[derive(Debug)]
struct RawEntries(Vec<(String, String)>);

impl<'de> Deserialize<'de> for RawEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = RawEntries;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping coalition keys to worth strings")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<RawEntries, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(RawEntries(out))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

/// Parses a game from JSON text.
pub fn parse_game(text: &str) -> Result<Game> {
    let raw: RawGameFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed game file: {e}")))?;
    if raw.n == 0 || raw.n > crate::coalition::MAX_PLAYERS {
        return Err(Error::PlayerCount(raw.n));
    }
    let mut entries = Vec::with_capacity(raw.worths.0.len());
    for (key, value) in &raw.worths.0 {
        let coalition = Coalition::parse_key(key, raw.n)?;
        let worth = parse_rational(value).map_err(|_| {
            Error::Parse(format!("cannot parse worth `{value}` of coalition `{key}`"))
        })?;
        entries.push((coalition, worth));
    }
    TuGame::new(raw.n, entries)
}

pub fn read_game_file(path: impl AsRef<Path>) -> Result<Game> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_game(&text)
}

/// Serializable form of a game: nonzero worths only, keyed as in files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameFile {
    pub n: usize,
    pub worths: BTreeMap<String, String>,
}

impl GameFile {
    pub fn from_game<T: Scalar>(game: &TuGame<T>) -> Self {
        let worths = game
            .coalitions()
            .skip(1)
            .filter(|c| !game.worth(*c).is_zero())
            .map(|c| (c.key(), game.worth(c).to_string()))
            .collect();
        GameFile {
            n: game.n(),
            worths,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("game file serializes")
    }
}

pub fn game_to_json<T: Scalar>(game: &TuGame<T>) -> String {
    serde_json::to_string(&GameFile::from_game(game)).expect("game file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::v0;
    use crate::scalar::rat;

    #[test]
    fn parses_fixture_file() {
        let text = r#"{"n": 3, "worths": {"1": "6", "1,2": "12", "1,3": "12/2", "1,2,3": "18.0"}}"#;
        let v = parse_game(text).unwrap();
        assert_eq!(v, v0());
        assert_eq!(v.worth(Coalition::from_players([0, 2])), &rat(6, 1));
    }

    #[test]
    fn round_trips_through_json() {
        assert_eq!(parse_game(&game_to_json(&v0())).unwrap(), v0());
    }

    #[test]
    fn empty_worths_is_null_game() {
        let v = parse_game(r#"{"n": 2, "worths": {}}"#).unwrap();
        assert!(v.is_null());
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(parse_game(r#"{"n": 3, "worths": {"3,1": "1"}}"#).is_err());
        assert!(parse_game(r#"{"n": 3, "worths": {"1": "x"}}"#).is_err());
        assert!(parse_game(r#"{"n": 3, "worths": {"": "1"}}"#).is_err());
        assert!(parse_game(r#"{"n": 3, "worths": {"1": "1", "1": "2"}}"#).is_err());
        assert!(parse_game(r#"{"n": 3, "worths": {}, "extra": 1}"#).is_err());
        assert!(parse_game(r#"{"n": 3, "worths": {"1": 6}}"#).is_err());
        assert!(parse_game(r#"{"n": 0, "worths": {}}"#).is_err());
        assert!(parse_game("not json").is_err());
    }
}
