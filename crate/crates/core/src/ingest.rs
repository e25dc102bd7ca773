//! Game-record CSV files, aggregation into queries, and win streaks.
//!
//! The file format is a header row followed by one row per game:
//!
//! ```text
//! player,event,sequence,opponent,opponent_rating,result
//! Alcaraz,Wimbledon2023,5,Medvedev,2110,1
//! ```
//!
//! `result` is `1`, `0.5` or `0`, or one of the aliases `W`, `D`, `L` in
//! any case. `sequence` orders games within the dataset and is what streak
//! extraction follows, independently of row order.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elo::average_rating;
use crate::error::{Error, Result};
use crate::score::ScoreLine;
use crate::systems::{Objective, PerformanceQuery};

pub const COLUMNS: [&str; 6] = [
    "player",
    "event",
    "sequence",
    "opponent",
    "opponent_rating",
    "result",
];

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("missing column {0:?} in header")]
    MissingColumn(&'static str),

    #[error("line {line}: {message}")]
    Invalid { line: u64, message: String },

    #[error("line {line}: {source}")]
    Csv { line: u64, source: csv::Error },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Outcome of one game from the player's side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameResult {
    Loss,
    Draw,
    Win,
}

impl GameResult {
    pub fn half_points(self) -> u32 {
        match self {
            GameResult::Loss => 0,
            GameResult::Draw => 1,
            GameResult::Win => 2,
        }
    }

    pub fn points(self) -> f64 {
        f64::from(self.half_points()) / 2.0
    }
}

impl FromStr for GameResult {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        match s.to_ascii_uppercase().as_str() {
            "W" => return Ok(GameResult::Win),
            "D" => return Ok(GameResult::Draw),
            "L" => return Ok(GameResult::Loss),
            _ => {}
        }
        match s.parse::<f64>() {
            Ok(1.0) => Ok(GameResult::Win),
            Ok(0.5) => Ok(GameResult::Draw),
            Ok(0.0) => Ok(GameResult::Loss),
            _ => Err(format!("result {s:?} is not one of 1, 0.5, 0, W, D, L")),
        }
    }
}

impl fmt::Display for GameResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameResult::Loss => "0",
            GameResult::Draw => "0.5",
            GameResult::Win => "1",
        })
    }
}

/// One game. Opponents without an established rating carry a substitute
/// rating supplied by the data author.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameRecord {
    pub player: String,
    pub event: String,
    pub sequence: u64,
    pub opponent: String,
    pub opponent_rating: f64,
    pub result: GameResult,
}

/// Reads game records in file order.
///
/// A completely empty source yields no records.
pub fn parse_games<R: Read>(source: R) -> Result<Vec<GameRecord>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader
        .headers()
        .map_err(|source| ParseError::Csv { line: 1, source })?
        .clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let mut index = [0usize; 6];
    for (slot, name) in index.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or(ParseError::MissingColumn(name))?;
    }
    let [player, event, sequence, opponent, rating, result] = index;

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|source| ParseError::Csv {
            line: source.position().map_or(0, |p| p.line()),
            source,
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let invalid = |message: String| ParseError::Invalid { line, message };
        let field = |i: usize| row.get(i).unwrap_or("");

        let seq: u64 = field(sequence)
            .parse()
            .ok()
            .filter(|&s| s > 0)
            .ok_or_else(|| invalid(format!("sequence {:?} is not a positive integer", field(sequence))))?;
        let opponent_rating: f64 = field(rating)
            .parse()
            .ok()
            .filter(|r: &f64| r.is_finite())
            .ok_or_else(|| invalid(format!("unparseable rating {:?}", field(rating))))?;
        let result = field(result).parse().map_err(invalid)?;
        if field(player).is_empty() {
            return Err(invalid("empty player".into()));
        }
        records.push(GameRecord {
            player: field(player).to_owned(),
            event: field(event).to_owned(),
            sequence: seq,
            opponent: field(opponent).to_owned(),
            opponent_rating,
            result,
        });
    }
    Ok(records)
}

/// Writes records in the canonical format read by [`parse_games`].
pub fn write_games<W: Write>(records: &[GameRecord], sink: W) -> Result<(), ParseError> {
    let mut writer = csv::Writer::from_writer(sink);
    let csv_err = |source| ParseError::Csv { line: 0, source };
    writer.write_record(COLUMNS).map_err(csv_err)?;
    for r in records {
        writer
            .write_record([
                r.player.clone(),
                r.event.clone(),
                r.sequence.to_string(),
                r.opponent.clone(),
                r.opponent_rating.to_string(),
                r.result.to_string(),
            ])
            .map_err(csv_err)?;
    }
    writer.flush()?;
    Ok(())
}

/// A non-empty run of one player's games.
#[derive(Debug, Clone, PartialEq)]
pub struct QuerySlice {
    player: String,
    event: Option<String>,
    records: Vec<GameRecord>,
}

impl QuerySlice {
    pub fn new(player: impl Into<String>, event: Option<String>, records: Vec<GameRecord>) -> Result<Self> {
        let player = player.into();
        if records.is_empty() {
            return Err(Error::EmptySlice);
        }
        if let Some(r) = records.iter().find(|r| r.player != player) {
            return Err(Error::MixedPlayers(player, r.player.clone()));
        }
        Ok(Self {
            player,
            event,
            records,
        })
    }

    pub fn player(&self) -> &str {
        &self.player
    }

    pub fn event_filter(&self) -> Option<&str> {
        self.event.as_deref()
    }

    pub fn records(&self) -> &[GameRecord] {
        &self.records
    }

    /// The event filter, or else the distinct events of the records in
    /// first-seen order, comma separated.
    pub fn event_label(&self) -> String {
        if let Some(e) = &self.event {
            return e.clone();
        }
        let mut seen: Vec<&str> = Vec::new();
        for r in &self.records {
            if !seen.contains(&r.event.as_str()) {
                seen.push(&r.event);
            }
        }
        seen.join(", ")
    }

    pub fn score(&self) -> ScoreLine {
        let half: u32 = self.records.iter().map(|r| r.result.half_points()).sum();
        ScoreLine::from_half_points(half, self.records.len() as u32)
            .expect("results never exceed one point per game")
    }

    pub fn average_opponent_rating(&self) -> Result<f64> {
        let ratings: Vec<f64> = self.records.iter().map(|r| r.opponent_rating).collect();
        average_rating(&ratings)
    }
}

/// Aggregates a slice into a query: `m` is the summed result, `n` the game
/// count, and `ra` the mean opponent rating.
pub fn build_query(slice: &QuerySlice, threshold: f64, objective: Objective) -> Result<PerformanceQuery> {
    let q = PerformanceQuery::new(slice.average_opponent_rating()?, slice.score())
        .with_threshold(threshold)
        .with_objective(objective);
    q.validate()?;
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupBy {
    Player,
    PlayerEvent,
}

/// Splits records into slices, keeping groups in order of first appearance
/// and records in file order within each group.
pub fn group_records(records: &[GameRecord], by: GroupBy) -> Vec<QuerySlice> {
    let mut groups: Vec<QuerySlice> = Vec::new();
    for r in records {
        let event = match by {
            GroupBy::Player => None,
            GroupBy::PlayerEvent => Some(r.event.clone()),
        };
        match groups
            .iter_mut()
            .find(|g| g.player == r.player && g.event == event)
        {
            Some(g) => g.records.push(r.clone()),
            None => groups.push(QuerySlice {
                player: r.player.clone(),
                event,
                records: vec![r.clone()],
            }),
        }
    }
    groups
}

/// Maximal runs of consecutive wins per player with at least `min_length`
/// games. Runs may cross event boundaries.
///
/// `records` must be strictly sorted by `(player, sequence)`.
pub fn extract_streaks(records: &[GameRecord], min_length: usize) -> Result<Vec<QuerySlice>> {
    if min_length == 0 {
        return Err(Error::ZeroStreakLength);
    }
    for (i, pair) in records.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if (a.player.as_str(), a.sequence) >= (b.player.as_str(), b.sequence) {
            return Err(Error::Unsorted { index: i + 1 });
        }
    }

    let mut streaks = Vec::new();
    let mut run: Vec<GameRecord> = Vec::new();
    let mut close = |run: &mut Vec<GameRecord>| {
        if run.len() >= min_length {
            let player = run[0].player.clone();
            streaks.push(QuerySlice {
                player,
                event: None,
                records: std::mem::take(run),
            });
        }
        run.clear();
    };
    for r in records {
        if run.last().is_some_and(|last| last.player != r.player) {
            close(&mut run);
        }
        if r.result == GameResult::Win {
            run.push(r.clone());
        } else {
            close(&mut run);
        }
    }
    close(&mut run);
    Ok(streaks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HEADER: &str = "player,event,sequence,opponent,opponent_rating,result\n";

    fn parse(body: &str) -> Result<Vec<GameRecord>, ParseError> {
        parse_games(format!("{HEADER}{body}").as_bytes())
    }

    fn game(player: &str, seq: u64, result: GameResult) -> GameRecord {
        GameRecord {
            player: player.into(),
            event: "E".into(),
            sequence: seq,
            opponent: format!("opp{seq}"),
            opponent_rating: 2500.0 + seq as f64,
            result,
        }
    }

    #[test]
    fn parses_a_row() {
        let recs = parse("Alcaraz,Wimbledon2023,5,Medvedev,2110,1\n").unwrap();
        assert_eq!(
            recs,
            vec![GameRecord {
                player: "Alcaraz".into(),
                event: "Wimbledon2023".into(),
                sequence: 5,
                opponent: "Medvedev".into(),
                opponent_rating: 2110.0,
                result: GameResult::Win,
            }]
        );
    }

    #[test]
    fn result_aliases() {
        let recs = parse("a,e,1,b,2000,D\na,e,2,b,2000,w\na,e,3,b,2000,l\na,e,4,b,2000,0.5\n").unwrap();
        let results: Vec<_> = recs.iter().map(|r| r.result).collect();
        use GameResult::*;
        assert_eq!(results, vec![Draw, Win, Loss, Draw]);
    }

    #[test]
    fn rejects_bad_rows_with_line_numbers() {
        match parse("a,e,1,b,2000,1\na,e,2,b,2000,2\n") {
            Err(ParseError::Invalid { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("a,e,1,b,strong,1\n") {
            Err(ParseError::Invalid { line: 2, message }) => assert!(message.contains("rating")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("a,e,0,b,2000,1\n"), Err(ParseError::Invalid { .. })));
        assert!(matches!(parse("a,e,1,b,NaN,1\n"), Err(ParseError::Invalid { .. })));
        assert!(matches!(parse("a,e,1,b,2000\n"), Err(ParseError::Csv { .. })));
    }

    #[test]
    fn missing_column() {
        let err = parse_games("player,event,sequence,opponent,result\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ParseError::MissingColumn("opponent_rating")));
    }

    #[test]
    fn empty_source() {
        assert!(parse_games("".as_bytes()).unwrap().is_empty());
        assert!(parse_games(HEADER.as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn column_order_is_free() {
        let recs = parse_games("result,player,opponent_rating,event,opponent,sequence\nW,x,2000,e,y,3\n".as_bytes())
            .unwrap();
        assert_eq!(recs[0].sequence, 3);
        assert_eq!(recs[0].opponent_rating, 2000.0);
    }

    #[test]
    fn query_from_slices() {
        let ratings = [1808.0, 1848.0, 1660.0, 1839.0, 2110.0, 2050.0, 2171.0];
        let recs: Vec<_> = ratings
            .iter()
            .enumerate()
            .map(|(i, &r)| GameRecord {
                opponent_rating: r,
                ..game("Alcaraz", i as u64 + 1, GameResult::Win)
            })
            .collect();
        let slice = QuerySlice::new("Alcaraz", None, recs).unwrap();
        let q = build_query(&slice, 0.75, Objective::ExactScore).unwrap();
        assert!((q.ra - 1926.5714).abs() < 1e-4);
        assert_eq!(q.score, ScoreLine::new(7.0, 7).unwrap());

        let single = QuerySlice::new(
            "a",
            None,
            vec![GameRecord {
                opponent_rating: 2700.0,
                ..game("a", 1, GameResult::Draw)
            }],
        )
        .unwrap();
        let q = build_query(&single, 0.75, Objective::ExactScore).unwrap();
        assert_eq!((q.ra, q.score), (2700.0, ScoreLine::new(0.5, 1).unwrap()));

        assert!(build_query(&single, 1.0, Objective::ExactScore).is_err());
    }

    #[test]
    fn slice_validation() {
        assert_eq!(QuerySlice::new("a", None, vec![]), Err(Error::EmptySlice));
        let mixed = vec![game("a", 1, GameResult::Win), game("b", 2, GameResult::Win)];
        assert!(matches!(QuerySlice::new("a", None, mixed), Err(Error::MixedPlayers(..))));
    }

    #[test]
    fn grouping_keeps_first_appearance_order() {
        let mut recs = vec![
            game("b", 1, GameResult::Win),
            game("a", 2, GameResult::Win),
            game("b", 3, GameResult::Loss),
        ];
        recs[2].event = "F".into();
        let g = group_records(&recs, GroupBy::Player);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].player(), "b");
        assert_eq!(g[0].records().len(), 2);
        assert_eq!(g[0].event_label(), "E, F");
        let g = group_records(&recs, GroupBy::PlayerEvent);
        assert_eq!(g.len(), 3);
        assert_eq!(g[2].event_label(), "F");
    }

    #[test]
    fn streak_stops_at_a_loss() {
        use GameResult::*;
        let recs: Vec<_> = [Win, Win, Loss, Win]
            .into_iter()
            .enumerate()
            .map(|(i, r)| game("p", i as u64 + 1, r))
            .collect();
        let s = extract_streaks(&recs, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].records().len(), 2);
        assert_eq!(extract_streaks(&recs, 1).unwrap().len(), 2);
        assert!(extract_streaks(&recs, 3).unwrap().is_empty());
        assert_eq!(extract_streaks(&recs, 0), Err(Error::ZeroStreakLength));
    }

    #[test]
    fn draws_break_streaks_and_players_separate_them() {
        use GameResult::*;
        let recs = vec![
            game("a", 1, Win),
            game("a", 2, Draw),
            game("a", 3, Win),
            game("a", 4, Win),
            game("b", 1, Win),
            game("b", 2, Win),
        ];
        let s = extract_streaks(&recs, 2).unwrap();
        let shape: Vec<_> = s.iter().map(|q| (q.player().to_owned(), q.records().len())).collect();
        assert_eq!(shape, vec![("a".into(), 2), ("b".into(), 2)]);
    }

    #[test]
    fn unsorted_streak_input() {
        use GameResult::*;
        let recs = vec![game("a", 2, Win), game("a", 1, Win)];
        assert_eq!(extract_streaks(&recs, 1), Err(Error::Unsorted { index: 1 }));
        let recs = vec![game("b", 1, Win), game("a", 2, Win)];
        assert!(extract_streaks(&recs, 1).is_err());
        let recs = vec![game("a", 1, Win), game("a", 1, Win)];
        assert!(extract_streaks(&recs, 1).is_err());
    }

    fn arb_record() -> impl Strategy<Value = GameRecord> {
        (
            "[A-Za-z][A-Za-z ]{0,8}[a-z]",
            "[A-Za-z0-9]{1,10}",
            1u64..10_000,
            "[A-Za-z][A-Za-z .'-]{0,12}",
            (1000.0..3000.0f64).prop_map(|r| (r * 10.0).round() / 10.0),
            prop_oneof![Just(GameResult::Win), Just(GameResult::Draw), Just(GameResult::Loss)],
        )
            .prop_map(|(player, event, sequence, opponent, opponent_rating, result)| GameRecord {
                player,
                event,
                sequence,
                opponent: opponent.trim().to_owned(),
                opponent_rating,
                result,
            })
            .prop_filter("non-empty opponent", |r| !r.opponent.is_empty())
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(records in proptest::collection::vec(arb_record(), 0..20)) {
            let mut buf = Vec::new();
            write_games(&records, &mut buf).unwrap();
            let parsed = parse_games(buf.as_slice()).unwrap();
            prop_assert_eq!(&parsed, &records);
            let mut again = Vec::new();
            write_games(&parsed, &mut again).unwrap();
            prop_assert_eq!(again, buf);
        }

        #[test]
        fn aggregation_conserves_points(results in proptest::collection::vec(0u32..3, 1..60)) {
            let recs: Vec<_> = results
                .iter()
                .enumerate()
                .map(|(i, &h)| {
                    let r = [GameResult::Loss, GameResult::Draw, GameResult::Win][h as usize];
                    game("p", i as u64 + 1, r)
                })
                .collect();
            let slice = QuerySlice::new("p", None, recs).unwrap();
            let s = slice.score();
            prop_assert_eq!(s.games() as usize, results.len());
            prop_assert_eq!(s.half_points(), results.iter().sum::<u32>());
        }

        #[test]
        fn streaks_are_maximal(results in proptest::collection::vec(proptest::bool::weighted(0.7), 0..80), min in 1usize..5) {
            let recs: Vec<_> = results
                .iter()
                .enumerate()
                .map(|(i, &w)| game("p", i as u64 + 1, if w { GameResult::Win } else { GameResult::Loss }))
                .collect();
            let streaks = extract_streaks(&recs, min).unwrap();
            for s in &streaks {
                prop_assert!(s.records().len() >= min);
                let first = s.records()[0].sequence as usize - 1;
                let last = s.records().last().unwrap().sequence as usize - 1;
                prop_assert!(s.records().iter().all(|r| r.result == GameResult::Win));
                prop_assert!(first == 0 || !results[first - 1]);
                prop_assert!(last + 1 == results.len() || !results[last + 1]);
            }
            // disjoint, so none contains another
            for pair in streaks.windows(2) {
                prop_assert!(pair[0].records().last().unwrap().sequence < pair[1].records()[0].sequence);
            }
            let brute = results
                .split(|w| !w)
                .filter(|run| run.len() >= min)
                .count();
            prop_assert_eq!(streaks.len(), brute);
        }
    }
}
