from .hpo import AutoML, sample_configs
from .hpo_space import func_search, suggest
