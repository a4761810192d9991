"""Ghostwriter: chat with an archived collection.

Ingests repository metadata, links it to controlled vocabularies, indexes
it as a knowledge graph plus a vector space, and answers natural-language
questions with a generated summary and a traceable list of source
records, via pluggable retrieval strategies.
"""

__version__ = "0.1.0"
