"""Quick end-to-end check of the compiled extension."""

import math

import spinor_lab as sl


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    u = sl.rest_spinor("particle", 1.0, 0)
    assert close(u.bar_norm(), 1.0)
    assert close(u.current()[0], 1.0)

    p = [1.25, 0.0, 0.0, 0.75]
    u = sl.spinor("particle", 1.0, p, 0)
    assert all(close(a, b) for a, b in zip(u.components, [0.5, 0, 1, 0]))
    assert close(u.dagger_norm(), 1.25)
    v = sl.spinor("antiparticle", 1.0, p, 0)
    assert close(v.bar_norm(), -1.0)

    d = sl.boost([0.0, 0.0, math.log(2.0)])
    moved = sl.rest_spinor("particle", 1.0, 0).transformed(d)
    assert all(close(a, b) for a, b in zip(moved.components, u.components))
    assert d.unitarity_defect() > 0.0
    assert d.pseudo_unitarity_residual() < 1e-12

    h = 1.0 / math.sqrt(2.0)
    psi = sl.superpose(1.0, [1.0, 0.0, 0.0, 0.0], h, h)
    r = psi.density().bloch()
    assert close(r[0], 1.0) and close(r[1], 0.0) and close(r[2], 0.0)

    rho = sl.DensityMatrix([(0.5, u), (0.5, sl.spinor("particle", 1.0, p, 1))])
    assert close(rho.purity(), 0.5)
    assert close(rho.transformed(d).purity(), 0.5, 1e-10)

    theta, phi = sl.solve_axis(1.0, [1.25, 0.75, 0.0, 0.0])
    assert close(theta, math.acos(0.8)) and phi == 0.0
    assert close(sl.spin_expectation(sl.spinor("particle", 1.0, [1.25, 0.75, 0.0, 0.0], 0), theta, phi), 1.0)

    _, theta, _ = sl.scenario_axis(1.0, math.log(2.0), math.log(2.0))
    assert abs(theta - 0.9547) < 1e-4
    assert close(sl.rest_particle_axis(math.log(2.0)), math.acos(0.8))

    rows = sl.sweep([0.0, 1.0], [0.0, 1.0])
    assert [(r[0], r[1]) for r in rows] == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]

    for name, residual in sl.check(seed=1, trials=20):
        assert residual <= 1e-10, (name, residual)

    try:
        sl.spinor("particle", 1.0, [2.0, 0.0, 0.0, 0.0], 0)
    except ValueError:
        pass
    else:
        raise AssertionError("off-shell momentum accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
