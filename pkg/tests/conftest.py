import pytest

from gombur import fit_mle, load_dataset


@pytest.fixture(scope="session")
def flood():
    return load_dataset("flood")


@pytest.fixture(scope="session")
def flood_fits(flood):
    """MLE fits of every family on the flood data, shared across tests."""
    families = ("gombur_v1", "gombur_v2", "mbur", "beta", "kumaraswamy",
                "topp_leone", "unit_lindley")
    return {fam: fit_mle(fam, flood) for fam in families}
