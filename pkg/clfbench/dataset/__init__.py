from .base_dataset import BaseDataset, Dataset, DatasetMeta
from .spec import DistributionSpec, GeneratorSpec, RootSpec, ClassModel
from .generator import moment_match, draw_class_model, sample_instances, gen_dataset, gen_family, correlation_moments
from .utils import save_dataset, load_dataset, save_family, load_family, load_family_spec, family_key
