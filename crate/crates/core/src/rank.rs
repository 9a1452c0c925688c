//! Question-domain projection and similarity ranking of candidate answerers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::{Question, UserId, Vocabulary};
use crate::error::{ensure, Error, Result};
use crate::linalg::DenseMatrix;
use crate::solver::FactorSet;

/// A question expressed in latent foci space: the sum of the word rows of `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainVector(pub Vec<f64>);

/// A user's foci memberships restricted to a question domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedMembership {
    pub user: UserId,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimilarityMetric {
    Cosine,
    Pcc,
    Euclidean,
}

impl SimilarityMetric {
    pub const ALL: [SimilarityMetric; 3] = [
        SimilarityMetric::Cosine,
        SimilarityMetric::Pcc,
        SimilarityMetric::Euclidean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SimilarityMetric::Cosine => "cosine",
            SimilarityMetric::Pcc => "pcc",
            SimilarityMetric::Euclidean => "euclidean",
        }
    }
}

impl fmt::Display for SimilarityMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cosine" => Ok(SimilarityMetric::Cosine),
            "pcc" | "pearson" => Ok(SimilarityMetric::Pcc),
            "euclidean" => Ok(SimilarityMetric::Euclidean),
            other => Err(Error::Input(format!(
                "unknown similarity metric {other:?} (expected cosine, pcc, or euclidean)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub user: UserId,
    pub score: f64,
}

/// Candidates sorted by descending score, ties broken by ascending user id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankedList {
    entries: Vec<RankedEntry>,
}

impl RankedList {
    pub fn from_scores(scores: impl IntoIterator<Item = (UserId, f64)>) -> Self {
        let mut entries: Vec<RankedEntry> = scores
            .into_iter()
            .map(|(user, score)| RankedEntry { user, score })
            .collect();
        entries.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.user.cmp(&b.user)));
        RankedList { entries }
    }

    pub fn entries(&self) -> &[RankedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn users(&self) -> impl Iterator<Item = UserId> + '_ {
        self.entries.iter().map(|e| e.user)
    }

    /// 1-based rank of `user`, if present.
    pub fn position(&self, user: UserId) -> Option<usize> {
        self.entries.iter().position(|e| e.user == user).map(|p| p + 1)
    }

    /// `rank<TAB>user_id<TAB>score` lines, scores to 9 significant digits.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(&format!("{}\t{}\t{}\n", i + 1, e.user, format_significant(e.score, 9)));
        }
        out
    }
}

/// `%.{digits}g`-style formatting without trailing-zero trimming.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        sci
    } else {
        format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)
    }
}

pub fn question_domain(p: &DenseMatrix, vocab: &Vocabulary, words: &[String]) -> Result<DomainVector> {
    ensure!(
        p.rows() == vocab.len(),
        Contract,
        "P has {} rows but the vocabulary has {} words",
        p.rows(),
        vocab.len()
    );
    let mut domain = vec![0.0; p.cols()];
    let mut hits = 0;
    for col in words.iter().filter_map(|w| vocab.index_of(w)) {
        hits += 1;
        for (d, &x) in domain.iter_mut().zip(p.row(col)) {
            *d += x;
        }
    }
    if hits == 0 {
        return Err(Error::OutOfVocabulary);
    }
    Ok(DomainVector(domain))
}

pub fn project_membership(user: UserId, u_row: &[f64], domain: &DomainVector) -> Result<ProjectedMembership> {
    ensure!(
        u_row.len() == domain.0.len(),
        Contract,
        "membership row has length {} but the domain has {}",
        u_row.len(),
        domain.0.len()
    );
    Ok(ProjectedMembership {
        user,
        values: u_row.iter().zip(&domain.0).map(|(u, d)| u * d).collect(),
    })
}

/// Cosine and Pearson are 0 when undefined; Euclidean is mapped to
/// `1 / (1 + distance)`.
pub fn similarity_slices(a: &[f64], b: &[f64], metric: SimilarityMetric) -> Result<f64> {
    ensure!(
        a.len() == b.len(),
        Contract,
        "similarity of vectors with lengths {} and {}",
        a.len(),
        b.len()
    );
    let cosine = |a: &[f64], b: &[f64]| {
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            0.0
        } else {
            dot / (na * nb)
        }
    };
    Ok(match metric {
        SimilarityMetric::Cosine => cosine(a, b),
        SimilarityMetric::Pcc => {
            if a.is_empty() {
                return Ok(0.0);
            }
            let n = a.len() as f64;
            let ma = a.iter().sum::<f64>() / n;
            let mb = b.iter().sum::<f64>() / n;
            let ca: Vec<f64> = a.iter().map(|x| x - ma).collect();
            let cb: Vec<f64> = b.iter().map(|x| x - mb).collect();
            cosine(&ca, &cb)
        }
        SimilarityMetric::Euclidean => {
            let d = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            1.0 / (1.0 + d)
        }
    })
}

pub fn similarity(a: &ProjectedMembership, b: &ProjectedMembership, metric: SimilarityMetric) -> Result<f64> {
    similarity_slices(&a.values, &b.values, metric)
}

/// Scores every connection against the asker within the question domain.
pub fn rank_answerers(
    question: &Question,
    factors: &FactorSet,
    vocab: &Vocabulary,
    metric: SimilarityMetric,
) -> Result<RankedList> {
    let domain = question_domain(&factors.p, vocab, &question.words)?;
    let u = &factors.u;
    let asker = project_membership(UserId::ASKER, u.row(0), &domain)?;
    let mut scores = Vec::with_capacity(u.rows().saturating_sub(1));
    for i in 1..u.rows() {
        let candidate = project_membership(UserId(i), u.row(i), &domain)?;
        scores.push((UserId(i), similarity(&asker, &candidate, metric)?));
    }
    Ok(RankedList::from_scores(scores))
}

/// Ranks connections by similarity of their full membership rows to the
/// asker's, ignoring any question.
pub fn rank_by_shared_foci(factors: &FactorSet, metric: SimilarityMetric) -> Result<RankedList> {
    let u = &factors.u;
    let mut scores = Vec::with_capacity(u.rows().saturating_sub(1));
    for i in 1..u.rows() {
        scores.push((UserId(i), similarity_slices(u.row(0), u.row(i), metric)?));
    }
    Ok(RankedList::from_scores(scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::build_user_word_matrix;
    use std::collections::BTreeMap;

    fn vocab(words: &[&str]) -> Vocabulary {
        let mut counts = BTreeMap::new();
        counts.insert(
            UserId(0),
            words.iter().map(|w| (w.to_string(), 1u64)).collect::<BTreeMap<_, _>>(),
        );
        build_user_word_matrix(1, &counts, 1).unwrap().1
    }

    fn words(ws: &[&str]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn domain_sums_word_rows() {
        let v = vocab(&["w0", "w1", "w2", "w3"]);
        let p = DenseMatrix::from_rows(&[
            vec![9.0, 9.0],
            vec![0.2, 0.0],
            vec![5.0, 5.0],
            vec![0.1, 0.4],
        ])
        .unwrap();
        assert_eq!(question_domain(&p, &v, &words(&["w1"])).unwrap().0, vec![0.2, 0.0]);
        let d = question_domain(&p, &v, &words(&["w1", "w3"])).unwrap().0;
        assert!((d[0] - 0.3).abs() < 1e-15 && d[1] == 0.4);
        let twice = question_domain(&p, &v, &words(&["w1", "w1", "nope"])).unwrap().0;
        assert_eq!(twice, vec![0.4, 0.0]);
        assert!(matches!(
            question_domain(&p, &v, &words(&["x", "y"])),
            Err(Error::OutOfVocabulary)
        ));
    }

    #[test]
    fn projection() {
        let d = DomainVector(vec![3.0, 0.0, 5.0]);
        assert_eq!(project_membership(UserId(1), &[1.0, 2.0, 0.0], &d).unwrap().values, vec![3.0, 0.0, 0.0]);
        let row = [0.3, 1.7, 2.0];
        assert_eq!(project_membership(UserId(1), &row, &DomainVector(vec![1.0; 3])).unwrap().values, row.to_vec());
        assert_eq!(project_membership(UserId(1), &row, &DomainVector(vec![0.0; 3])).unwrap().values, vec![0.0; 3]);
        assert!(project_membership(UserId(1), &[1.0], &d).is_err());
    }

    #[test]
    fn cosine_cases() {
        let c = |a: &[f64], b: &[f64]| similarity_slices(a, b, SimilarityMetric::Cosine).unwrap();
        assert_eq!(c(&[1.0, 0.0], &[0.0, 1.0]), 0.0);
        assert!((c(&[1.0, 1.0], &[2.0, 2.0]) - 1.0).abs() < 1e-15);
        assert!((c(&[1.0, 2.0], &[2.0, 1.0]) - 0.8).abs() < 1e-15);
        assert_eq!(c(&[0.0, 0.0], &[2.0, 1.0]), 0.0);
    }

    #[test]
    fn pcc_and_euclidean() {
        let p = |a: &[f64], b: &[f64]| similarity_slices(a, b, SimilarityMetric::Pcc).unwrap();
        assert!((p(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 1.0).abs() < 1e-12);
        assert!((p(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-12);
        assert_eq!(p(&[1.0, 1.0], &[3.0, 2.0]), 0.0);
        let e = |a: &[f64], b: &[f64]| similarity_slices(a, b, SimilarityMetric::Euclidean).unwrap();
        assert_eq!(e(&[1.0, 1.0], &[1.0, 1.0]), 1.0);
        assert_eq!(e(&[0.0, 0.0], &[3.0, 4.0]), 1.0 / 6.0);
        assert!(similarity_slices(&[1.0], &[1.0, 2.0], SimilarityMetric::Pcc).is_err());
    }

    #[test]
    fn metric_names_round_trip() {
        for m in SimilarityMetric::ALL {
            assert_eq!(m.name().parse::<SimilarityMetric>().unwrap(), m);
        }
        assert!("manhattan".parse::<SimilarityMetric>().is_err());
    }

    #[test]
    fn ties_break_by_user_id() {
        let l = RankedList::from_scores([(UserId(3), 0.5), (UserId(1), 0.5), (UserId(2), 0.9)]);
        assert_eq!(l.users().collect::<Vec<_>>(), vec![UserId(2), UserId(1), UserId(3)]);
        assert_eq!(l.position(UserId(3)), Some(3));
    }

    #[test]
    fn single_candidate_and_identical_rows() {
        let v = vocab(&["a"]);
        let one = FactorSet::new(
            DenseMatrix::from_rows(&[vec![1.0], vec![0.0]]).unwrap(),
            DenseMatrix::identity(1),
            DenseMatrix::from_rows(&[vec![1.0]]).unwrap(),
        )
        .unwrap();
        let q = Question::new("q", words(&["a"]), [UserId(1)]);
        for m in SimilarityMetric::ALL {
            assert_eq!(rank_answerers(&q, &one, &v, m).unwrap().len(), 1);
        }

        let twins = FactorSet::new(
            DenseMatrix::from_rows(&[vec![1.0, 0.5], vec![0.1, 0.9], vec![0.3, 0.2], vec![0.3, 0.2]]).unwrap(),
            DenseMatrix::identity(2),
            DenseMatrix::from_rows(&[vec![1.0, 1.0]]).unwrap(),
        )
        .unwrap();
        for m in SimilarityMetric::ALL {
            let l = rank_answerers(&q, &twins, &v, m).unwrap();
            let p2 = l.position(UserId(2)).unwrap();
            let p3 = l.position(UserId(3)).unwrap();
            assert_eq!(p3, p2 + 1);
            assert_eq!(l.entries()[p2 - 1].score, l.entries()[p3 - 1].score);
        }
    }

    #[test]
    fn tsv_format() {
        let l = RankedList::from_scores([(UserId(2), 0.123456789123), (UserId(1), 1.0 / 3.0)]);
        assert_eq!(l.to_tsv(), "1\t1\t0.333333333\n2\t2\t0.123456789\n");
        assert_eq!(format_significant(-12.5, 9), "-12.5000000");
        assert_eq!(format_significant(1.5e-9, 9), "1.50000000e-9");
        assert_eq!(format_significant(0.0, 9), "0");
    }
}
