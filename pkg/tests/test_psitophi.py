import pytest

from phigamma.errors import DegenerateModule, NotSurjective
from phigamma.field import field_of_degree
from phigamma.pgmod import direct_sum, disguise, induced_from_params, rank1_from_character, reduced
from phigamma.pgmod import iso
from phigamma.pgmod.psitophi import PsiGammaModule, psi_data, psitophi_reconstruct, split_phi_components
from phigamma.suites import degenerate_psi_module
from phigamma.weil import SmoothCharacter


@pytest.mark.parametrize("p", [2, 3, 5])
def test_phi_components_reassemble(p):
    from phigamma.series import SeriesRing

    R = SeriesRing(field_of_degree(p, 2), 1)
    f = R.from_ints(list(range(1, 30)), -4, 25)
    parts = split_phi_components(f, p)
    back = sum((parts[r].phi().shift(r) for r in range(1, p)), parts[0].phi())
    assert (back - f).is_zero()


@pytest.mark.parametrize("p,n,h", [(2, 2, 1), (3, 2, 1), (3, 3, 1), (5, 2, 1)])
def test_reconstruction_is_isomorphic(p, n, h):
    F = field_of_degree(p, 2)
    D = reduced(disguise(induced_from_params(n, h, F(1), 40), 0))
    M = psi_data(D)
    assert M.is_surjective()
    D2 = psitophi_reconstruct(M)
    assert iso.test_isomorphic(D2, D)


def test_psi_data_agrees_with_the_module():
    F = field_of_degree(3, 2)
    D = reduced(induced_from_params(2, 1, F(2), 40))
    M = psi_data(D)
    from phigamma.linalg import SMat

    R = D.ring
    y = SMat(R, [[R.from_ints([1, 2, 0, 1], 0, 40)], [R.from_ints([0, 1, 1], -1, 40)]])
    assert (M.psi_vec(y) - D.psi_vec(y)).is_zero()


def test_degenerate_module_raises():
    with pytest.raises(DegenerateModule):
        psitophi_reconstruct(degenerate_psi_module())


def test_non_surjective_module_raises():
    F = field_of_degree(3, 1)
    triv = rank1_from_character(SmoothCharacter.trivial(F), 20)
    M = psi_data(triv)
    # X·ψ has image X·E[[X]], a proper sublattice
    shrunk = PsiGammaModule(M.ring, [P.shift(1) for P in M.psi_mats], M.gamma)
    assert not shrunk.is_surjective()
    with pytest.raises(NotSurjective):
        psitophi_reconstruct(shrunk)
