from .errors import *
from .numeric import Rng, derive, assign_folds, gram, standard_normals, sym_eigenvalues, sym_eigh, min_eigenvalue
from .utils import set_random_seed, stable_hash, dump_json, load_json, round_half_up
from .evaluater import Evaluator, accuracy, summarize
from .logger import get_logger, set_verbosity, print_stats, print_sweep, print_search
