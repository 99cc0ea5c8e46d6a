"""Metadata module."""

__title__: str = "synthcomp"
__description__: str = (
    "executable synthetic computability: a mu-recursive machine, partial values, "
    "halting problems, the Kleene tree and Cantor/Baire bijections."
)
__version__: str = "0.1.0"
__url__: str = "https://github.com/rafaelleinio/synthcomp"
__author__: str = "Rafael Leinio"
__license__: str = "MIT"
