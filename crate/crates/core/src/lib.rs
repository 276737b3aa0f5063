//! Part-of-speech tagging toolkit: a transformation-based rule tagger, a
//! decision-tree trigram tagger, ambiguity-stratified evaluation, external
//! lexicon merging, and sequential tagger combination.

pub mod combine;
pub mod corpus;
pub mod dtree;
pub mod eval;
pub mod lexicon;
pub mod morph;
pub mod tbl;

use corpus::Tag;
use lexicon::Lexicon;
use rayon::prelude::*;

/// Anything that assigns one tag per form of a sentence.
pub trait Tagger: Sync {
    fn tag_sentence(&self, forms: &[String]) -> Vec<Tag>;
}

/// Tags every sentence, spreading work over `jobs` threads (0 = all cores).
/// The result does not depend on `jobs`.
pub fn tag_all<T: Tagger + ?Sized>(
    tagger: &T,
    sentences: &[Vec<String>],
    jobs: usize,
) -> Vec<Vec<Tag>> {
    if jobs == 1 {
        return sentences.iter().map(|s| tagger.tag_sentence(s)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        sentences
            .par_iter()
            .map(|s| tagger.tag_sentence(s))
            .collect()
    })
}

/// Most frequent lexicon tag, the unknown default for gaps.
pub struct BaselineTagger<'a> {
    pub lexicon: &'a Lexicon,
}

impl Tagger for BaselineTagger<'_> {
    fn tag_sentence(&self, forms: &[String]) -> Vec<Tag> {
        tbl::initial_tag(forms, self.lexicon)
    }
}
