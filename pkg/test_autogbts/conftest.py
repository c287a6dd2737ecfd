from os import path

import pytest

from autoconf import conf
from autogbts.mock import fixtures

directory = path.dirname(path.realpath(__file__))


@pytest.fixture(autouse=True)
def set_config_path(request):
    conf.instance.push(
        new_path=path.join(directory, "config"),
        output_path=path.join(directory, "output"),
    )


############
# Matrices #
############


@pytest.fixture(name="chain_matrix")
def make_chain_matrix():
    return fixtures.make_chain_matrix()


@pytest.fixture(name="all_ones_4x4")
def make_all_ones_4x4():
    return fixtures.make_all_ones_matrix(k=4)


############
# Circuits #
############


@pytest.fixture(name="single_mode_circuit")
def make_single_mode_circuit():
    return fixtures.make_single_mode_circuit(r=0.5)


@pytest.fixture(name="coherent_circuit")
def make_coherent_circuit():
    return fixtures.make_coherent_circuit()


@pytest.fixture(name="beamsplitter_circuit")
def make_beamsplitter_circuit():
    return fixtures.make_beamsplitter_circuit(r=0.5)


@pytest.fixture(name="product_circuit")
def make_product_circuit():
    return fixtures.make_product_circuit()


@pytest.fixture(name="vacuum_circuit")
def make_vacuum_circuit():
    return fixtures.make_vacuum_circuit()


@pytest.fixture(name="lossy_circuit")
def make_lossy_circuit():
    return fixtures.make_lossy_circuit()
