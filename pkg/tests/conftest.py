# -*- coding: utf-8 -*-

import pathlib

import pytest

from gmnl_net import HadamardCode, NetworkGraph
from gmnl_net.games import KVParams, chsh

DATA_DIR = pathlib.Path(__file__).parent / 'data'

SEED = 12345


@pytest.fixture
def seed():
    return SEED


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture(scope='session')
def code4():
    return HadamardCode(2)


@pytest.fixture(scope='session')
def code8():
    return HadamardCode(3)


@pytest.fixture(scope='session')
def code16():
    return HadamardCode(4)


@pytest.fixture
def kv4():
    return KVParams(k=2, L=1, eta=0.25)


@pytest.fixture
def chsh_game():
    return chsh()


@pytest.fixture
def triangle():
    return NetworkGraph.complete(3)
