"""Certify p_c < p_u for the right-angled dodecahedron group and audit every step."""
import argparse
import json
import math

from coxperc.ball import build_ball, orientation_stats
from coxperc.certificate import certify_phase
from coxperc.fixtures import load_input
from coxperc.invariants import orientation_checks
from coxperc.walks import GabberParams, gabber_bound_on_ball


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input", nargs="?", default="dodecahedron", help="fixture name or JSON file")
    ap.add_argument("--radius", type=int, default=5, help="ball radius for the observed Gabber sums")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    M = load_input(args.input)
    cert = certify_phase(M)
    ball = build_ball(M, args.radius)
    stats = orientation_stats(ball)
    observed = gabber_bound_on_ball(ball, stats, GabberParams.for_variant(M.rank, cert.rho_lemma))
    checks = orientation_checks(ball, stats)

    if args.json:
        print(json.dumps({"certificate": cert.to_dict(), "observed_gabber": observed.to_dict(),
                          "orientation": [c.to_dict() for c in checks]}, indent=2))
        return
    for e in cert.audit:
        print(f"[{'ok' if e['passed'] else 'FAIL'}] {e['check']}  {e['detail']}")
    print(f"\nrho bound ({cert.rho_lemma}) = {cert.rho_value:.12f}")
    print(f"b1 = {cert.b1:.12f}" + ("  via gamma*" if cert.gamma_star_applied else ""))
    print(f"b2 = {cert.b2:.12f}  ({cert.gr_source})")
    if M.rank == 12:
        print(f"closed forms: (91 + sqrt 3881)/20 = {(91 + math.sqrt(3881)) / 20:.12f}, "
              f"4 + sqrt 15 = {4 + math.sqrt(15):.12f}")
    print(f"margin = {cert.margin:.6f}; verdict: {cert.verdict}")
    print(f"\nradius-{ball.radius} ball: {ball.num_vertices} vertices, observed max f_v = {observed.value:.6f}")
    for c in checks:
        print(f"[{'ok' if c.passed else 'FAIL'}] {c.name}: {c.detail}")


if __name__ == "__main__":
    main()
