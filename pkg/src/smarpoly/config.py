"""Configuration caps and defaults, overridable via environment variables."""

import os

DELTA_CAP_DEFAULT = 4096          # factorial materialization
CENSUS_CAP_DEFAULT = 2 ** 24      # q^n for censuses, sieves, tau sums
Q_CAP_DEFAULT = 2 ** 16           # field order
ORACLE_DEFINITION_CAP_DEFAULT = 512
ORACLE_VALUATION_CAP_DEFAULT = 10 ** 7
SEED_DEFAULT = 20260819


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def delta_cap():
    return _env_int("SMARPOLY_DELTA_CAP", DELTA_CAP_DEFAULT)


def census_cap():
    return _env_int("SMARPOLY_CENSUS_CAP", CENSUS_CAP_DEFAULT)


def q_cap():
    return _env_int("SMARPOLY_Q_CAP", Q_CAP_DEFAULT)


def default_seed():
    return _env_int("SMARPOLY_SEED", SEED_DEFAULT)


def oracle_definition_cap():
    return _env_int("SMARPOLY_ORACLE_DEFINITION_CAP", ORACLE_DEFINITION_CAP_DEFAULT)


def oracle_valuation_cap():
    return _env_int("SMARPOLY_ORACLE_VALUATION_CAP", ORACLE_VALUATION_CAP_DEFAULT)
