"""Known-exponent cross-checks for every verification equation.

The oracle never touches curve points.  It replays the documented
randomness draw order of keygen/sign/prove in plain modular arithmetic,
so a test can run the library and the oracle on twin rng streams, check
that each produced element equals the generator raised to the mirrored
log, and then compare pairing-side verdicts with the scalar-side
verdicts computed here.  The equation checkers are written out directly
from the verification relations rather than shared with library code.

All logs are integers mod n: G1 logs are to base g1, G2 logs to base
g2, and target-group logs to base e(g1, g2).
"""

from __future__ import annotations

from .rng import DeterministicRng


class KnownExponentOracle:
    def __init__(self, order: int):
        self.n = int(order)

    # -- constant-size signature mirrors -------------------------------

    def csig_keygen(self, k: int, rng: DeterministicRng) -> dict:
        """Mirror of csig_keygen draws; returns secret and public logs."""
        n = self.n
        rho_r = rng.scalar_nonzero()
        rho_u = rng.scalar_nonzero()
        gammas, deltas = [], []
        for _ in range(k):
            gammas.append(rng.scalar())
            deltas.append(rng.scalar())
        gamma_z = rng.scalar()
        delta_z = rng.scalar()
        alpha = rng.scalar()
        beta = rng.scalar()
        return {
            "k": k,
            "rho_r": rho_r, "rho_u": rho_u,
            "gammas": gammas, "deltas": deltas,
            "gamma_z": gamma_z, "delta_z": delta_z,
            "alpha": alpha, "beta": beta,
            # public side
            "g_r": rho_r, "h_u": rho_u,
            "g_z": rho_r * gamma_z % n, "h_z": rho_u * delta_z % n,
            "g_i": [rho_r * g % n for g in gammas],
            "h_i": [rho_u * d % n for d in deltas],
            "a": alpha, "b": beta,
        }

    def csig_sign(self, key: dict, msg: list[int], rng: DeterministicRng) -> dict:
        """Mirror of csig_sign draws; msg holds opposite-group logs."""
        n = self.n
        if len(msg) != key["k"]:
            raise ValueError("message length mismatch")
        zeta = rng.scalar()
        rho = rng.scalar()
        tau = rng.scalar()
        phi = rng.scalar()
        omega = rng.scalar()
        r = (key["alpha"] - rho * tau - key["gamma_z"] * zeta
             - sum(g * m for g, m in zip(key["gammas"], msg))) % n
        u = (key["beta"] - phi * omega - key["delta_z"] * zeta
             - sum(d * m for d, m in zip(key["deltas"], msg))) % n
        return {
            "z": zeta, "r": r, "s": key["rho_r"] * rho % n, "t": tau,
            "u": u, "v": key["rho_u"] * phi % n, "w": omega,
        }

    def csig_eq1(self, pk: dict, msg: list[int], sig: dict) -> bool:
        n = self.n
        lhs = (pk["g_z"] * sig["z"] + pk["g_r"] * sig["r"] + sig["s"] * sig["t"]
               + sum(gi * m for gi, m in zip(pk["g_i"], msg))) % n
        return lhs == pk["g_r"] * pk["a"] % n

    def csig_eq2(self, pk: dict, msg: list[int], sig: dict) -> bool:
        n = self.n
        lhs = (pk["h_z"] * sig["z"] + pk["h_u"] * sig["u"] + sig["v"] * sig["w"]
               + sum(hi * m for hi, m in zip(pk["h_i"], msg))) % n
        return lhs == pk["h_u"] * pk["b"] % n

    def csig_verify(self, pk: dict, msg: list[int], sig: dict) -> bool:
        return self.csig_eq1(pk, msg, sig) and self.csig_eq2(pk, msg, sig)

    # -- mixed-group signature mirrors ----------------------------------

    def xsig_keygen(self, k1: int, k2: int, rng: DeterministicRng) -> dict:
        return {
            "k1": k1, "k2": k2,
            "key1": self.csig_keygen(k1 + 1, rng),
            "key2": self.csig_keygen(k2, rng),
        }

    def xsig_sign(self, kp: dict, m1: list[int], m2: list[int],
                  rng: DeterministicRng) -> dict:
        sig2 = self.csig_sign(kp["key2"], m2, rng)
        sig1 = self.csig_sign(kp["key1"], m1 + [sig2["s"]], rng)
        return {"sig1": sig1, "sig2": sig2}

    def xsig_verify(self, kp: dict, m1: list[int], m2: list[int], sig: dict) -> bool:
        chained = m1 + [sig["sig2"]["s"]]
        return (self.csig_verify(kp["key1"], chained, sig["sig1"])
                and self.csig_verify(kp["key2"], m2, sig["sig2"]))

    # -- proof-system mirrors -------------------------------------------

    def crs_gen(self, rng: DeterministicRng) -> dict:
        return {"u": rng.scalar_nonzero(), "v": rng.scalar_nonzero()}

    def niwi_randomness(self, x_names, y_names, rng: DeterministicRng) -> dict:
        rand_x = {name: rng.scalar() for name in sorted(x_names)}
        rand_y = {name: rng.scalar() for name in sorted(y_names)}
        return {"r": rand_x, "s": rand_y}

    def commitments(self, crs: dict, witness_x: dict, witness_y: dict,
                    rand: dict) -> dict:
        n = self.n
        c = {k: (witness_x[k] + rand["r"][k] * crs["u"]) % n for k in witness_x}
        d = {k: (witness_y[k] + rand["s"][k] * crs["v"]) % n for k in witness_y}
        return {"c": c, "d": d}

    def proof_pair(self, crs: dict, eq: dict, witness_x: dict, witness_y: dict,
                   rand: dict) -> dict:
        """Mirror of one equation's proof pair.

        eq: {x_names, y_names, a (per y name), b (per x name),
             gamma (per x name: per y name), t}
        """
        n = self.n
        pi = 0
        cross = 0
        for xn in eq["x_names"]:
            ri = rand["r"][xn]
            pi += ri * eq["b"][xn]
            for yn in eq["y_names"]:
                g = eq["gamma"][xn][yn]
                pi += ri * g * witness_y[yn]
                cross += ri * g * rand["s"][yn]
        pi = (pi + cross * crs["v"]) % n
        theta = 0
        for yn in eq["y_names"]:
            sj = rand["s"][yn]
            theta += sj * eq["a"][yn]
            for xn in eq["x_names"]:
                theta += eq["gamma"][xn][yn] * sj * witness_x[xn]
        return {"pi": pi, "theta": theta % n}

    def eq4(self, crs: dict, eq: dict, comm: dict, pair: dict) -> bool:
        """Scalar form of the proof verification relation."""
        n = self.n
        lhs = 0
        for yn in eq["y_names"]:
            lhs += eq["a"][yn] * comm["d"][yn]
        for xn in eq["x_names"]:
            lhs += comm["c"][xn] * eq["b"][xn]
            for yn in eq["y_names"]:
                lhs += eq["gamma"][xn][yn] * comm["c"][xn] * comm["d"][yn]
        rhs = eq["t"] + crs["u"] * pair["pi"] + pair["theta"] * crs["v"]
        return lhs % n == rhs % n

    def equation_satisfied(self, eq: dict, witness_x: dict, witness_y: dict) -> bool:
        n = self.n
        acc = 0
        for yn in eq["y_names"]:
            acc += eq["a"][yn] * witness_y[yn]
        for xn in eq["x_names"]:
            acc += witness_x[xn] * eq["b"][xn]
            for yn in eq["y_names"]:
                acc += eq["gamma"][xn][yn] * witness_x[xn] * witness_y[yn]
        return acc % n == eq["t"] % n

    # -- protocol equation ----------------------------------------------

    def eq3(self, m_log: int, ps_prime: int, y1: int, y2: int, t_u: int) -> bool:
        """Scalar form of the contact-token consistency relation."""
        return m_log % self.n == (y1 * t_u * ps_prime + y2 * t_u) % self.n
