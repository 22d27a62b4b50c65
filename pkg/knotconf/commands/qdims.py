import argparse

from knotconf.application import Command, Settings
from knotconf.arnold import quotient_cohomology_dims


class QuotientDims(Command):
    name = "qdims"
    help = "ranks of the cohomology of C_q modulo its boundary"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--q", type=int, required=True, help="number of points"
        )

    def run(self, args: argparse.Namespace, settings: Settings) -> dict:
        params = settings.params(args.q)
        dims = quotient_cohomology_dims(params)
        return {
            "q": params.q,
            "n": params.n,
            "dims": {str(degree): rank for degree, rank in dims.items()},
        }
