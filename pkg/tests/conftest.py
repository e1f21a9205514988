import pytest

from tracelogic import corpus
from tracelogic.semantics import Evaluator


@pytest.fixture(scope="session")
def finite_corpus():
    return corpus.finite_traces()


@pytest.fixture(scope="session")
def lasso_corpus():
    return corpus.lasso_traces()


@pytest.fixture(scope="session")
def trace_corpus(finite_corpus, lasso_corpus):
    return finite_corpus + lasso_corpus


@pytest.fixture(scope="session")
def random_formulas():
    return corpus.random_formulas(1000, max_depth=4)


@pytest.fixture(scope="session")
def corpus_evaluator(trace_corpus):
    return Evaluator(trace_corpus)
