import pytest

from pmi.catalog import example1_instance, figure1_instance


@pytest.fixture
def fig1():
    return figure1_instance()


@pytest.fixture
def ex1():
    return example1_instance(100)
