"""Exact computation of graded Ext algebras, diagonal subalgebras,
Hochschild cohomology and periodicity verdicts over quiver algebras.

The heavy lifting happens in the C++ extension; every function here
takes presentation *source text* (see the repository README for the
language) and returns the report as a plain dict.
"""

import json

try:
    from ._diagext import run_json, commands, __version__
except ImportError:  # in-tree test layout
    from _diagext import run_json, commands, __version__

__all__ = [
    "run",
    "commands",
    "resolve",
    "betti",
    "ext",
    "diagonal",
    "periodicity",
    "cx1",
    "hochschild",
    "ext_simples",
    "center",
    "verify_grcent",
    "simple_syzygy",
]


def run(command, algebra, modules=(), n=4, window=6, depth=-1, units=None, field="",
        i=-1, prop_n=-1, m=-1):
    """Run a subcommand on inline sources; returns the report dict.

    The report carries an ``exit_code`` key: 0 ok, 2 hypothesis failure,
    1 error (with an ``error`` message).
    """
    rep = json.loads(run_json(command, algebra, list(modules), n, window, depth,
                              dict(units or {}), field, i, prop_n, m))
    return rep


def _result(rep):
    if rep["exit_code"] != 0:
        raise RuntimeError(rep.get("error", "diagext run failed"))
    return rep["result"]


def resolve(algebra, module, n=4, **kw):
    return _result(run("resolve", algebra, [module], n=n, **kw))


def betti(algebra, module, n=4, **kw):
    return _result(run("betti", algebra, [module], n=n, **kw))


def ext(algebra, module, n=4, **kw):
    return _result(run("ext", algebra, [module], n=n, **kw))


def diagonal(algebra, module, n=4, **kw):
    return _result(run("diagonal", algebra, [module], n=n, **kw))


def periodicity(algebra, module, n=4, window=8, **kw):
    return _result(run("periodicity", algebra, [module], n=n, window=window, **kw))


def cx1(algebra, module, n=4, window=8, **kw):
    return _result(run("cx1", algebra, [module], n=n, window=window, **kw))


def hochschild(algebra, n=4, **kw):
    return _result(run("hochschild", algebra, n=n, **kw))


def ext_simples(algebra, n=4, **kw):
    return _result(run("ext-simples", algebra, n=n, **kw))


def center(algebra, n=4, **kw):
    return _result(run("center", algebra, n=n, **kw))


def verify_grcent(algebra, n=4, **kw):
    return _result(run("verify-grcent", algebra, n=n, **kw))


def simple_syzygy(algebra, window=8, **kw):
    return _result(run("simple-syzygy", algebra, window=window, **kw))
