"""holset: a sequent-calculus kernel for ZF with an embedding of
simply-typed higher-order logic, proof-producing tactics, an algebraic
datatype compiler, a hereditarily-finite-set evaluator, and a proof-trace
importer."""

__version__ = "0.1.0"
