"""Ends of directed Cayley graphs of finitely generated semigroups.

Modules, bottom up:

* :mod:`.words` -- words, shortlex order, rewriting systems
* :mod:`.models` -- semigroups in closed form and their JSON documents
* :mod:`.cayley` -- Cayley balls, SCCs, disjoint-path packings
* :mod:`.green` -- relative Green classes and index evidence
* :mod:`.ends` -- rays, the end order, and the constructive lemmas
* :mod:`.catalog` and :mod:`.cli` -- built-in examples and the command line
"""

__version__ = "0.1.0"
