import argparse

from knotconf.application import Command, Settings
from knotconf.strata import verify_faces_axioms


class VerifyFaces(Command):
    name = "verify-faces"
    help = "check the manifold-with-faces axioms on the stratum labels"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--q", type=int, required=True, help="number of points"
        )

    def run(self, args: argparse.Namespace, settings: Settings) -> dict:
        return verify_faces_axioms(args.q).as_dict()
