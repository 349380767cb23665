from fvectortools.poset import RankedPoset, _Sentinel
from fvectortools.symmetric import PPoset

import json

import numpy as np


class JSONDecoder(json.JSONDecoder):
    def __init__(self, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.parse_dict, **kwargs)

    def parse_dict(self, d):
        if "elements" in d and "covers" in d:
            if "labels" in d:
                # a poset with monomial labels
                return PPoset.from_dict(d)
            return RankedPoset.from_dict(d)
        else:
            return d


class JSONEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, (set, frozenset)):
            return sorted(obj, key=str)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, _Sentinel):
            return str(obj)
        try:
            d = obj.as_dict()
        except AttributeError:
            d = super().default(obj)
        return d


def dumps(obj):
    """Deterministic JSON text of a report: sorted keys, four-space indent."""
    return json.dumps(obj, cls=JSONEncoder, indent=4, sort_keys=True)
