import numpy as np
import pytest

from entrydetect import dataset_from_readings, parse_csv
from entrydetect.synthetic import gen_dataset

TABLE1_CSV = """num_satellites,snr_db,rss_dbm,entrance,distance_m,note
20,33,-60,No,10,Outside
14,30,-66,No,8,Outside
23,28,-62,No,4,Outside
15,20,-57,No,2,Outside
9,19,-54,Yes,0,Entrance
8,15,-44,No,-2,Inside
4,14,-31,No,-4,Inside
"""


@pytest.fixture
def table1_readings():
    return parse_csv(TABLE1_CSV)


@pytest.fixture
def table1(table1_readings):
    return dataset_from_readings(table1_readings)


@pytest.fixture(scope="session")
def synth200():
    """200-row synthetic dataset (7 traces cut to 200 rows)."""
    _, ds = gen_dataset(n_traces=7, seed=5)
    return ds.subset(np.arange(200))


def random_queries(dataset, n, seed):
    """Uniform queries over a box 20% wider than the data's range."""
    rng = np.random.default_rng(seed)
    lo, hi = dataset.X.min(axis=0), dataset.X.max(axis=0)
    pad = 0.2 * (hi - lo + 1.0)
    return rng.uniform(lo - pad, hi + pad, size=(n, dataset.n_features))


def pytest_terminal_summary(terminalreporter):
    try:
        from tests.test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[num])
