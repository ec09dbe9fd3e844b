"""High-precision values frozen into the C++ tests.

Builds the discriminant block and the five-class walk directly from the
class-sum definitions in mpmath and prints the constants used by
test_spectral.cpp and test_asymptotics.cpp. Run: python3 frozen_values.py
"""
import mpmath as mp

mp.mp.dps = 50

CASES = [(3, 1), (100, 1), (100, 10), (100, 100), (10, 3), (1000, 31)]
PROB_TIMES = {(10, 3): [1, 6, 50], (100, 1): [111], (100, 100): [15, 500]}


def t_block(n, m):
    hub = n + m - 1
    return mp.matrix([[mp.mpf(n - 2) / (n - 1), 1 / mp.sqrt(hub)], [1 / mp.sqrt(hub), 0]])


def walk(n, m):
    # classes A0, AK+, AK-, AS+, AS-; boundary rows: clique rest, leaves, hub
    hub = n + m - 1
    d = mp.zeros(3, 5)
    d[0, 0] = mp.sqrt(mp.mpf(n - 2) / (n - 1))
    d[0, 2] = 1 / mp.sqrt(n - 1)
    d[2, 1] = mp.sqrt(mp.mpf(n - 1) / hub)
    d[2, 3] = mp.sqrt(mp.mpf(m) / hub)
    s = mp.zeros(5, 5)
    s[0, 0] = 1
    s[1, 2] = s[2, 1] = s[3, 4] = s[4, 3] = 1
    return s * (2 * d.T * d - mp.eye(5))


def main():
    for n, m in CASES:
        c1, c2 = sorted(mp.eigsy(t_block(n, m))[0], reverse=True)
        th1, th2 = mp.acos(c1), mp.acos(c2)
        topt = int(mp.floor(mp.pi / (2 * th1)))
        print(f"({n},{m}) cos1={mp.nstr(c1, 17)} cos2={mp.nstr(c2, 17)} "
              f"th1={mp.nstr(th1, 17)} th2={mp.nstr(th2, 17)} t_opt={topt}")
        times = PROB_TIMES.get((n, m))
        if times:
            u = walk(n, m)
            psi = mp.matrix([mp.sqrt(mp.mpf(n - 2) / n), 1 / mp.sqrt(n), 1 / mp.sqrt(n), 0, 0])
            for t in range(max(times) + 1):
                if t in times:
                    print(f"    p_{t} = {mp.nstr(psi[1] ** 2 + psi[3] ** 2, 17)}")
                psi = u * psi


if __name__ == "__main__":
    main()
