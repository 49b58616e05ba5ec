pub mod dissimilarity;
pub mod embed;
pub mod evaluate;
pub mod generate;
pub mod pipeline;
pub mod plot;
