import argparse

from knotconf.application import Command, Settings
from knotconf.arnold import basis


class Basis(Command):
    name = "basis"
    help = "list the admissible basis monomials"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--q", type=int, required=True, help="number of points"
        )
        parser.add_argument(
            "--degree", type=int, help="only monomials of this degree"
        )

    def run(self, args: argparse.Namespace, settings: Settings) -> dict:
        params = settings.params(args.q)
        monomials = basis(params, args.degree)
        return {
            "q": params.q,
            "n": params.n,
            "degree": args.degree,
            "count": len(monomials),
            "monomials": [str(m) for m in monomials],
        }
