import numpy as np
import pytest

from blochcontract.superop import LindbladSystem

S3 = np.sqrt(3.0)

# Printed Bloch superoperators of the three-level examples.
EXAMPLE1_A = np.array([
    [-1, 0, 0, 1, S3 / 3, 0, 0.5, 1],
    [0, -0.5, 0, 0, 0, 0.5, 0, 0],
    [0, -1, -1, 0, 0, 0.5, 0, 0],
    [-1, 0, 0, -0.5, -2 * S3 / 3, 0, 0, 1.5],
    [0, 0, 0, 0, -2, 0, S3 / 2, S3],
    [0, 0.5, -0.5, 0, 0, -1.5, 0, 0],
    [-0.5, 0, 0, -1, -S3 / 2, 0, -1, 0.5],
    [1, 0, 0, -0.5, -S3 / 3, 0, -0.5, -1.5],
])
EXAMPLE1_C = np.sqrt(2.0) / 3 * np.array([1, 0, 0, 1, S3, 0, 0, -1])
EXAMPLE1_RHO_SS = np.array([[2, -1, 0], [-1, 2, -1], [0, -1, 1]]) / 5

EXAMPLE4_A = np.diag([-1, -0.5, -0.5, -0.5, -1, -1, -0.5, -1.0])
EXAMPLE4_A[0, 4] = np.sqrt(4 / 3)
EXAMPLE4_A[1, 5] = 1
EXAMPLE4_A[3, 7] = 1


def random_matrix(rng, N):
    return (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2)


def random_hermitian(rng, N):
    M = random_matrix(rng, N)
    return (M + M.conj().T) / 2


def random_density(rng, N, rank=None):
    G = random_matrix(rng, N) if rank is None else random_matrix(rng, N)[:, :rank]
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, N):
    Q, R = np.linalg.qr(random_matrix(rng, N))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_system(rng, N, n_ops=None, hamiltonian=True):
    n_ops = rng.integers(1, 4) if n_ops is None else n_ops
    H = random_hermitian(rng, N) if hamiltonian else np.zeros((N, N))
    return LindbladSystem(H, tuple(random_matrix(rng, N) for _ in range(n_ops)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
