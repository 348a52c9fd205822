from abc import ABC, abstractmethod


class BaseTask(ABC):
    r"""
    Scoring scheme for one (classifier configuration, dataset) trial.

    Attributes
    -----------
    evaluator : Evaluator
        Metric used to score the held-out predictions.
    """

    def __init__(self):
        super(BaseTask, self).__init__()
        self.evaluator = None

    @abstractmethod
    def evaluate(self, config, dataset):
        r"""Accuracy (percent) of the classifier ``config`` on ``dataset``."""
