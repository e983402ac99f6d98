"""Independent reference evaluations used by the tests."""

import numpy as np
from scipy.special import loggamma


def f4_bruteforce(a, b, c1, c2, x1, x2, nmax=200):
    """Row-major double sum over n1, n2 <= nmax with log-gamma terms."""
    n1 = np.arange(nmax + 1)[:, None]
    n2 = np.arange(nmax + 1)[None, :]
    n = n1 + n2
    logt = (loggamma(a + n) - loggamma(a) + loggamma(b + n) - loggamma(b)
            - loggamma(c1 + n1) + loggamma(c1) - loggamma(c2 + n2) + loggamma(c2)
            - loggamma(n1 + 1.0) - loggamma(n2 + 1.0)
            + n1 * np.log(complex(x1)) + n2 * np.log(complex(x2)))
    terms = np.exp(logt)
    total = 0j
    for row in terms:
        for t in row:
            total += t
    return total


def f4_bruteforce_fast(a, b, c1, c2, x1, x2, nmax=200):
    n1 = np.arange(nmax + 1)[:, None]
    n2 = np.arange(nmax + 1)[None, :]
    n = n1 + n2
    logt = (loggamma(a + n) - loggamma(a) + loggamma(b + n) - loggamma(b)
            - loggamma(c1 + n1) + loggamma(c1) - loggamma(c2 + n2) + loggamma(c2)
            - loggamma(n1 + 1.0) - loggamma(n2 + 1.0)
            + n1 * np.log(complex(x1)) + n2 * np.log(complex(x2)))
    return complex(np.exp(logt).sum(axis=1).sum())
