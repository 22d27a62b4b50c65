import argparse

from knotconf.application import Command, Settings
from knotconf.coproduct import sigma


class Sigma(Command):
    name = "sigma"
    help = "the shuffle permutation sigma(q,t,r,s)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        for arg in ("q", "t", "r", "s"):
            parser.add_argument(arg, type=int)

    def run(self, args: argparse.Namespace, settings: Settings) -> dict:
        shuffle = sigma(args.q, args.t, args.r, args.s)
        return {
            "q": shuffle.q,
            "t": shuffle.t,
            "r": shuffle.r,
            "s": shuffle.s,
            "images": list(shuffle.images),
            "involution": shuffle.is_involution,
        }
