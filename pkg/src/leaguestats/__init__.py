"""Re-ranking, inequality, density-overlap and PCA analysis of Premier League seasons."""

from .corpus import (
    DESCRIPTORS,
    Corpus,
    Descriptor,
    SeasonTable,
    TeamSeasonRecord,
    descriptor_column,
    load_corpus,
    load_embedded_corpus,
    parse_season_csv,
)
from .density import KdeConfig, kde, nonoverlap_table, normalize, overlap, overlap_pct
from .inequality import gini, inequality_series, lorenz, theil
from .multivariate import correlation_matrix, jacobi_eigh, pca, pearson
from .ranking import official_order, rank_displacement, rerank, rerank_all

__version__ = "0.1.0"
