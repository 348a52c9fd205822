from .utils import *
from .dataset import *
from .models import *
from .tasks import *
from .trainerflow import *
from .report import *

__version__ = '0.1.0'
