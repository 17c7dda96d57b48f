"""Document retrieval by best proximity-scored passage."""

from .baselines import Bm25Params, bm25_window_rank, vsm_rank
from .corpus import Document, Token, TokenizerConfig, load_corpus, query_terms, tokenize
from .errors import (
    BudgetExceededError,
    CorpusError,
    IndexFormatError,
    NotEnoughTermsError,
    PqrError,
    QrelsError,
    TermAbsentError,
    UnknownDocumentError,
    VersionMismatchError,
)
from .evaluation import EvalReport, Qrel, load_qrels, reciprocal_rank, run_eval
from .index import PositionalIndex, build_index, load_index, save_index
from .passage import BestPassage, EnumerationBudget, Passage, best_passage, enumerate_passages
from .proximity import ProximityParams, cp, passage_raw_score
from .scoring import ScoredResult, normalize_scores, rank_documents

__version__ = "0.1.0"
