//! Rating datasets as bipartite person–movie graphs.
//!
//! People and movies are addressed two ways: by their original (opaque) ids
//! and by dense indices `0..n` assigned in ascending id order. All graph
//! algorithms in this crate work on the dense indices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum DatasetError {
    #[error("failed to read ratings: {0}")]
    Io(#[from] io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("dataset contains no ratings")]
    Empty,
    #[error("sparsity is undefined when there are no people or no movies")]
    UndefinedSparsity,
    #[error("unknown person id {0}")]
    UnknownPerson(u64),
    #[error("unknown movie id {0}")]
    UnknownMovie(u64),
    #[error("rating for person {person} and movie {movie} is not finite")]
    NonFiniteRating { person: u64, movie: u64 },
    #[error("power-law fit needs at least 3 ranks, got {0}")]
    UnderdeterminedFit(usize),
    #[error("power-law fit input contains a zero count at rank {0}")]
    ZeroCount(usize),
    #[error("unknown dataset format '{0}' (expected 'movielens' or 'csv')")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatingTriple {
    pub person_id: u64,
    pub movie_id: u64,
    pub rating: Option<f64>,
    pub timestamp: Option<i64>,
}

impl RatingTriple {
    pub fn new(person_id: u64, movie_id: u64) -> Self {
        Self {
            person_id,
            movie_id,
            rating: None,
            timestamp: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// `person<TAB>movie<TAB>rating<TAB>timestamp`, whitespace separated.
    #[default]
    MovieLensTab,
    /// Header `person,movie[,rating]`.
    GenericCsv,
}

impl FromStr for Format {
    type Err = DatasetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "movielens" | "movielens_tab" | "tab" => Ok(Format::MovieLensTab),
            "csv" | "generic_csv" => Ok(Format::GenericCsv),
            other => Err(DatasetError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::MovieLensTab => f.write_str("movielens"),
            Format::GenericCsv => f.write_str("csv"),
        }
    }
}

/// A vertex of the bipartite graph, by original id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Person(u64),
    Movie(u64),
}

/// Person–movie rating graph. Immutable once built.
#[derive(Debug, Clone)]
pub struct BipartiteRatings {
    people: Vec<u64>,
    movies: Vec<u64>,
    person_index: HashMap<u64, u32>,
    movie_index: HashMap<u64, u32>,
    person_movies: Vec<Vec<u32>>,
    movie_people: Vec<Vec<u32>>,
    ratings: Vec<RatingTriple>,
    duplicate_warnings: usize,
}

impl BipartiteRatings {
    /// Builds the graph from rating triples; the vertex sets are the ids
    /// that occur in the triples.
    pub fn from_triples<I>(triples: I) -> Result<Self, DatasetError>
    where
        I: IntoIterator<Item = RatingTriple>,
    {
        let triples: Vec<RatingTriple> = triples.into_iter().collect();
        let people: Vec<u64> = triples.iter().map(|t| t.person_id).collect();
        let movies: Vec<u64> = triples.iter().map(|t| t.movie_id).collect();
        Self::from_parts(people, movies, triples)
    }

    /// Builds the graph with explicit vertex sets, so people or movies
    /// without ratings can be represented. Duplicate `(person, movie)`
    /// pairs keep their first occurrence.
    pub fn from_parts<P, M, T>(people: P, movies: M, triples: T) -> Result<Self, DatasetError>
    where
        P: IntoIterator<Item = u64>,
        M: IntoIterator<Item = u64>,
        T: IntoIterator<Item = RatingTriple>,
    {
        let mut people: Vec<u64> = people.into_iter().collect();
        people.sort_unstable();
        people.dedup();
        let mut movies: Vec<u64> = movies.into_iter().collect();
        movies.sort_unstable();
        movies.dedup();

        let person_index: HashMap<u64, u32> = people.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();
        let movie_index: HashMap<u64, u32> = movies.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();

        let mut person_movies = vec![Vec::new(); people.len()];
        let mut movie_people = vec![Vec::new(); movies.len()];
        let mut seen = HashSet::new();
        let mut ratings = Vec::new();
        let mut duplicate_warnings = 0;

        for t in triples {
            let p = *person_index
                .get(&t.person_id)
                .ok_or(DatasetError::UnknownPerson(t.person_id))?;
            let m = *movie_index
                .get(&t.movie_id)
                .ok_or(DatasetError::UnknownMovie(t.movie_id))?;
            if t.rating.is_some_and(|r| !r.is_finite()) {
                return Err(DatasetError::NonFiniteRating {
                    person: t.person_id,
                    movie: t.movie_id,
                });
            }
            if !seen.insert((p, m)) {
                duplicate_warnings += 1;
                continue;
            }
            person_movies[p as usize].push(m);
            movie_people[m as usize].push(p);
            ratings.push(t);
        }
        for list in person_movies.iter_mut().chain(movie_people.iter_mut()) {
            list.sort_unstable();
        }

        Ok(Self {
            people,
            movies,
            person_index,
            movie_index,
            person_movies,
            movie_people,
            ratings,
            duplicate_warnings,
        })
    }

    pub fn n_people(&self) -> usize {
        self.people.len()
    }

    pub fn n_movies(&self) -> usize {
        self.movies.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ratings.len()
    }

    /// Duplicate `(person, movie)` pairs dropped while building.
    pub fn duplicate_warnings(&self) -> usize {
        self.duplicate_warnings
    }

    /// Person ids in dense-index order (ascending).
    pub fn people(&self) -> &[u64] {
        &self.people
    }

    /// Movie ids in dense-index order (ascending).
    pub fn movies(&self) -> &[u64] {
        &self.movies
    }

    pub fn person_index(&self, id: u64) -> Option<u32> {
        self.person_index.get(&id).copied()
    }

    pub fn movie_index(&self, id: u64) -> Option<u32> {
        self.movie_index.get(&id).copied()
    }

    /// Movies rated by person `p` (dense indices, sorted).
    pub fn movies_of(&self, p: u32) -> &[u32] {
        &self.person_movies[p as usize]
    }

    /// People who rated movie `m` (dense indices, sorted).
    pub fn raters_of(&self, m: u32) -> &[u32] {
        &self.movie_people[m as usize]
    }

    pub fn person_degree(&self, p: u32) -> usize {
        self.person_movies[p as usize].len()
    }

    pub fn movie_degree(&self, m: u32) -> usize {
        self.movie_people[m as usize].len()
    }

    /// Deduplicated ratings in first-occurrence order.
    pub fn ratings(&self) -> &[RatingTriple] {
        &self.ratings
    }

    /// All edges as dense `(person, movie)` index pairs, grouped by person.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.person_movies
            .iter()
            .enumerate()
            .flat_map(|(p, ms)| ms.iter().map(move |&m| (p as u32, m)))
    }

    /// Minimum number of ratings contributed by any person.
    pub fn min_person_degree(&self) -> Option<usize> {
        self.person_movies.iter().map(Vec::len).min()
    }
}

/// Reads a ratings file.
pub fn load_ratings(path: impl AsRef<Path>, format: Format) -> Result<BipartiteRatings, DatasetError> {
    let file = File::open(path)?;
    parse_ratings(BufReader::new(file), format)
}

/// Parses ratings from any reader.
pub fn parse_ratings<R: Read>(reader: R, format: Format) -> Result<BipartiteRatings, DatasetError> {
    let triples = match format {
        Format::MovieLensTab => parse_movielens(BufReader::new(reader))?,
        Format::GenericCsv => parse_csv(reader)?,
    };
    if triples.is_empty() {
        return Err(DatasetError::Empty);
    }
    BipartiteRatings::from_triples(triples)
}

fn parse_field<T: FromStr>(field: &str, what: &str, line: u64) -> Result<T, DatasetError> {
    field.parse().map_err(|_| DatasetError::Parse {
        line,
        message: format!("invalid {what} '{field}'"),
    })
}

fn parse_movielens<R: BufRead>(reader: R) -> Result<Vec<RatingTriple>, DatasetError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() < 2 || fields.len() > 4 {
            return Err(DatasetError::Parse {
                line: line_no,
                message: format!("expected 2 to 4 fields, found {}", fields.len()),
            });
        }
        let rating = match fields.get(2) {
            Some(f) => {
                let r: f64 = parse_field(f, "rating", line_no)?;
                if !r.is_finite() {
                    return Err(DatasetError::Parse {
                        line: line_no,
                        message: format!("rating '{f}' is not finite"),
                    });
                }
                Some(r)
            }
            None => None,
        };
        out.push(RatingTriple {
            person_id: parse_field(fields[0], "person id", line_no)?,
            movie_id: parse_field(fields[1], "movie id", line_no)?,
            rating,
            timestamp: fields
                .get(3)
                .map(|f| parse_field(f, "timestamp", line_no))
                .transpose()?,
        });
    }
    Ok(out)
}

fn parse_csv<R: Read>(reader: R) -> Result<Vec<RatingTriple>, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line());
        DatasetError::Parse {
            line,
            message: e.to_string(),
        }
    };
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (person_col, movie_col) = match (column("person"), column("movie")) {
        (Some(p), Some(m)) => (p, m),
        _ => {
            return Err(DatasetError::Parse {
                line: 1,
                message: "header must contain 'person' and 'movie' columns".into(),
            })
        }
    };
    let rating_col = column("rating");

    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let get = |col: usize, what: &str| {
            record.get(col).ok_or_else(|| DatasetError::Parse {
                line,
                message: format!("missing {what}"),
            })
        };
        let rating = match rating_col.and_then(|c| record.get(c)) {
            Some("") | None => None,
            Some(f) => {
                let r: f64 = parse_field(f, "rating", line)?;
                if !r.is_finite() {
                    return Err(DatasetError::Parse {
                        line,
                        message: format!("rating '{f}' is not finite"),
                    });
                }
                Some(r)
            }
        };
        out.push(RatingTriple {
            person_id: parse_field(get(person_col, "person id")?, "person id", line)?,
            movie_id: parse_field(get(movie_col, "movie id")?, "movie id", line)?,
            rating,
            timestamp: None,
        });
    }
    Ok(out)
}

/// Writes the graph in the MovieLens tab format. Missing ratings are
/// written as `1` and missing timestamps as `0`.
pub fn write_movielens_tab<W: Write>(g: &BipartiteRatings, mut out: W) -> io::Result<()> {
    for t in g.ratings() {
        let rating = t.rating.unwrap_or(1.0);
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            t.person_id,
            t.movie_id,
            rating,
            t.timestamp.unwrap_or(0)
        )?;
    }
    Ok(())
}

/// Fraction of empty cells in the person × movie matrix.
pub fn sparsity(g: &BipartiteRatings) -> Result<f64, DatasetError> {
    if g.n_people() == 0 || g.n_movies() == 0 {
        return Err(DatasetError::UndefinedSparsity);
    }
    // one rounding: both integers are exact in f64
    let cells = g.n_people() as u64 * g.n_movies() as u64;
    Ok((cells - g.edge_count() as u64) as f64 / cells as f64)
}

/// Vertex index in the combined person-then-movie numbering.
fn combined_index(g: &BipartiteRatings, node: Node) -> Result<usize, DatasetError> {
    match node {
        Node::Person(id) => g
            .person_index(id)
            .map(|p| p as usize)
            .ok_or(DatasetError::UnknownPerson(id)),
        Node::Movie(id) => g
            .movie_index(id)
            .map(|m| g.n_people() + m as usize)
            .ok_or(DatasetError::UnknownMovie(id)),
    }
}

/// Undirected BFS over the bipartite graph, returning hop distances
/// (`u32::MAX` for unreached) in the combined numbering.
fn bipartite_bfs(g: &BipartiteRatings, start: usize, max_depth: u32) -> Vec<u32> {
    let np = g.n_people();
    let mut dist = vec![u32::MAX; np + g.n_movies()];
    let mut queue = VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        if d == max_depth {
            continue;
        }
        let (offset, next) = if v < np {
            (np, g.movies_of(v as u32))
        } else {
            (0, g.raters_of((v - np) as u32))
        };
        for &u in next {
            let u = offset + u as usize;
            if dist[u] == u32::MAX {
                dist[u] = d + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// True iff all people and movies form a single connected component.
pub fn is_connected_bipartite(g: &BipartiteRatings) -> bool {
    let total = g.n_people() + g.n_movies();
    if total == 0 {
        return false;
    }
    bipartite_bfs(g, 0, u32::MAX).iter().all(|&d| d != u32::MAX)
}

/// Number of distinct vertices within `depth` hops of `start`, counting
/// `start` itself.
pub fn bfs_reach_count(g: &BipartiteRatings, start: Node, depth: u32) -> Result<usize, DatasetError> {
    let s = combined_index(g, start)?;
    Ok(bipartite_bfs(g, s, depth).iter().filter(|&&d| d != u32::MAX).count())
}

/// People by descending rating count (buff index) and movies by descending
/// rater count (hit index). Position 0 holds buff/hit index 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitsBuffsOrdering {
    pub buff_rank: Vec<u64>,
    pub hit_rank: Vec<u64>,
    pub buff_degrees: Vec<usize>,
    pub hit_degrees: Vec<usize>,
}

/// Ranks by descending degree; ties go to the smaller original id.
pub fn reorder_hits_buffs(g: &BipartiteRatings) -> HitsBuffsOrdering {
    let rank = |ids: &[u64], degree: &dyn Fn(u32) -> usize| {
        let mut order: Vec<u32> = (0..ids.len() as u32).collect();
        // dense indices are in ascending id order, so a stable sort on degree
        // breaks ties by id
        order.sort_by_key(|&i| std::cmp::Reverse(degree(i)));
        let ranked: Vec<u64> = order.iter().map(|&i| ids[i as usize]).collect();
        let degrees: Vec<usize> = order.iter().map(|&i| degree(i)).collect();
        (ranked, degrees)
    };
    let (buff_rank, buff_degrees) = rank(g.people(), &|p| g.person_degree(p));
    let (hit_rank, hit_degrees) = rank(g.movies(), &|m| g.movie_degree(m));
    HitsBuffsOrdering {
        buff_rank,
        hit_rank,
        buff_degrees,
        hit_degrees,
    }
}

/// Copy of `g` with people renamed to their buff index and movies to their
/// hit index (both starting at 1).
pub fn relabel_hits_buffs(g: &BipartiteRatings, ordering: &HitsBuffsOrdering) -> BipartiteRatings {
    let person_new: HashMap<u64, u64> = ordering
        .buff_rank
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i as u64 + 1))
        .collect();
    let movie_new: HashMap<u64, u64> = ordering
        .hit_rank
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i as u64 + 1))
        .collect();
    let triples = g.ratings().iter().map(|t| RatingTriple {
        person_id: person_new[&t.person_id],
        movie_id: movie_new[&t.movie_id],
        ..*t
    });
    BipartiteRatings::from_parts(1..=g.n_people() as u64, 1..=g.n_movies() as u64, triples)
        .expect("relabeling preserves validity")
}

/// Least-squares fit of `ln P(b) = intercept − alpha·ln b − b/tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub alpha: f64,
    /// `f64::INFINITY` when the cutoff term is disabled or the fitted slope
    /// in `b` is not negative.
    pub tau: f64,
    pub intercept: f64,
    /// Sum of squared residuals in log space.
    pub residual: f64,
}

/// Fits a power law with optional exponential cutoff to a rank-ordered
/// count sequence (rank `b` is the 1-based position).
pub fn fit_power_law(degrees: &[u64], with_cutoff: bool) -> Result<PowerLawFit, DatasetError> {
    if degrees.len() < 3 {
        return Err(DatasetError::UnderdeterminedFit(degrees.len()));
    }
    if let Some(pos) = degrees.iter().position(|&d| d == 0) {
        return Err(DatasetError::ZeroCount(pos + 1));
    }
    let n = degrees.len();
    let cols = if with_cutoff { 3 } else { 2 };
    let design = DMatrix::from_fn(n, cols, |row, col| {
        let b = (row + 1) as f64;
        match col {
            0 => 1.0,
            1 => b.ln(),
            _ => b,
        }
    });
    let y = DVector::from_iterator(n, degrees.iter().map(|&d| (d as f64).ln()));
    let svd = design.clone().svd(true, true);
    let beta = svd
        .solve(&y, 1e-12)
        .expect("SVD computed with both singular vector sets");
    let residual = (&y - &design * &beta).norm_squared();
    let tau = if with_cutoff && beta[2] < 0.0 {
        -1.0 / beta[2]
    } else {
        f64::INFINITY
    };
    Ok(PowerLawFit {
        alpha: -beta[1],
        tau,
        intercept: beta[0],
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(u64, u64)]) -> BipartiteRatings {
        BipartiteRatings::from_triples(edges.iter().map(|&(p, m)| RatingTriple::new(p, m))).unwrap()
    }

    #[test]
    fn duplicate_triple_is_dropped_with_warning() {
        let g = parse_ratings("1\t10\t3\t0\n1\t10\t3\t0\n".as_bytes(), Format::MovieLensTab).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.duplicate_warnings(), 1);
    }

    #[test]
    fn first_duplicate_wins() {
        let g = parse_ratings("1 10 3 5\n1 10 4 6\n".as_bytes(), Format::MovieLensTab).unwrap();
        assert_eq!(g.ratings()[0].rating, Some(3.0));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_ratings("1\t2\t3\t4\nabc 5 3\n".as_bytes(), Format::MovieLensTab).unwrap_err();
        match err {
            DatasetError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            parse_ratings("".as_bytes(), Format::MovieLensTab),
            Err(DatasetError::Empty)
        ));
        assert!(matches!(
            parse_ratings("person,movie,rating\n".as_bytes(), Format::GenericCsv),
            Err(DatasetError::Empty)
        ));
    }

    #[test]
    fn csv_with_optional_rating() {
        let text = "person,movie,rating\n5,7,\n5,8,4.5\n9,7,1\n";
        let g = parse_ratings(text.as_bytes(), Format::GenericCsv).unwrap();
        assert_eq!((g.n_people(), g.n_movies(), g.edge_count()), (2, 2, 3));
        assert_eq!(g.ratings()[0].rating, None);
        assert_eq!(g.ratings()[1].rating, Some(4.5));

        let err = parse_ratings("person,movie\n1,x\n".as_bytes(), Format::GenericCsv).unwrap_err();
        assert!(matches!(err, DatasetError::Parse { line: 2, .. }), "{err:?}");
        let err = parse_ratings("a,b\n1,2\n".as_bytes(), Format::GenericCsv).unwrap_err();
        assert!(matches!(err, DatasetError::Parse { line: 1, .. }));
    }

    #[test]
    fn non_finite_rating_rejected() {
        let err = parse_ratings("1 2 NaN 0\n".as_bytes(), Format::MovieLensTab).unwrap_err();
        assert!(matches!(err, DatasetError::Parse { line: 1, .. }));
    }

    #[test]
    fn sparsity_edge_cases() {
        let complete = graph(&[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(sparsity(&complete).unwrap(), 0.0);
        let none = BipartiteRatings::from_parts([1, 2], [1], []).unwrap();
        assert_eq!(sparsity(&none).unwrap(), 1.0);
        let nobody = BipartiteRatings::from_parts([], [1], []).unwrap();
        assert!(matches!(sparsity(&nobody), Err(DatasetError::UndefinedSparsity)));
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected_bipartite(&graph(&[(1, 1)])));
        assert!(!is_connected_bipartite(&graph(&[(1, 1), (2, 2)])));
        let with_lonely_movie = BipartiteRatings::from_parts([1], [1, 2], [RatingTriple::new(1, 1)]).unwrap();
        assert!(!is_connected_bipartite(&with_lonely_movie));
    }

    #[test]
    fn reach_counts() {
        let g = graph(&[(1, 10), (1, 11), (1, 12), (2, 12), (3, 13)]);
        assert_eq!(bfs_reach_count(&g, Node::Person(1), 0).unwrap(), 1);
        assert_eq!(bfs_reach_count(&g, Node::Person(1), 1).unwrap(), 4);
        assert_eq!(bfs_reach_count(&g, Node::Person(1), 2).unwrap(), 5);
        assert_eq!(bfs_reach_count(&g, Node::Movie(13), 5).unwrap(), 2);
        assert!(matches!(
            bfs_reach_count(&g, Node::Person(99), 1),
            Err(DatasetError::UnknownPerson(99))
        ));
    }

    #[test]
    fn hits_buffs_ties_break_by_id() {
        let g = graph(&[(7, 1), (3, 1), (5, 1)]);
        let o = reorder_hits_buffs(&g);
        assert_eq!(o.buff_rank, vec![3, 5, 7]);
        let single = graph(&[(42, 1), (42, 2)]);
        assert_eq!(reorder_hits_buffs(&single).buff_rank, vec![42]);
    }

    #[test]
    fn hits_buffs_relabel_is_idempotent() {
        let g = graph(&[(7, 1), (7, 2), (3, 2), (5, 1), (5, 2), (5, 3)]);
        let o = reorder_hits_buffs(&g);
        assert_eq!(o.buff_rank, vec![5, 7, 3]);
        assert_eq!(o.buff_degrees, vec![3, 2, 1]);
        assert_eq!(o.hit_rank, vec![2, 1, 3]);
        let relabeled = relabel_hits_buffs(&g, &o);
        let again = reorder_hits_buffs(&relabeled);
        assert_eq!(again.buff_rank, vec![1, 2, 3]);
        assert_eq!(again.hit_rank, vec![1, 2, 3]);
        assert_eq!(again.buff_degrees, o.buff_degrees);
    }

    #[test]
    fn power_law_errors() {
        assert!(matches!(
            fit_power_law(&[3, 2], true),
            Err(DatasetError::UnderdeterminedFit(2))
        ));
        assert!(matches!(
            fit_power_law(&[3, 2, 0, 1], true),
            Err(DatasetError::ZeroCount(3))
        ));
    }

    #[test]
    fn constant_sequence_is_flat() {
        let fit = fit_power_law(&[40; 100], true).unwrap();
        assert!(fit.alpha.abs() < 0.01);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn recovers_pure_exponent() {
        let degrees: Vec<u64> = (1..=500)
            .map(|b| (1000.0 * (b as f64).powf(-0.5)).ceil() as u64)
            .collect();
        let fit = fit_power_law(&degrees, false).unwrap();
        assert!((fit.alpha - 0.5).abs() < 0.05, "{fit:?}");
        assert!(fit.tau.is_infinite());
    }

    #[test]
    fn movielens_export_round_trips() {
        let g = graph(&[(1, 10), (2, 10), (2, 11)]);
        let mut buf = Vec::new();
        write_movielens_tab(&g, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "1\t10\t1\t0\n2\t10\t1\t0\n2\t11\t1\t0\n"
        );
        let back = parse_ratings(buf.as_slice(), Format::MovieLensTab).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}
