"""JSON schemas for experiment configs and emitted files."""

_int_list = {"type": "array", "items": {"type": "integer"}}

META = {
    "type": "object",
    "required": ["seed", "config_hash", "version"],
    "properties": {
        "seed": {"type": "integer"},
        "config_hash": {"type": "string"},
        "version": {"type": "string"},
    },
}

EXPERIMENT_CONFIG = {
    "type": "object",
    "required": ["p", "K", "N"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "K": {"type": "integer", "minimum": 1},
        "N": {"type": "integer", "minimum": 1},
        "adversaries": _int_list,
        "v": {"type": "integer", "minimum": 1},
        "f": {**_int_list, "minItems": 2},
        "omegas": _int_list,
        "alphas": _int_list,
        "randomize_points": {"type": "boolean"},
        "message_dim": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "tag_mode": {"enum": ["oracle", "fingerprint"]},
        "behavior_class": {"enum": ["converse", "random", "exhaustive", "honest", "file"]},
        "behavior_file": {"type": "string"},
        "behavior_samples": {"type": "integer", "minimum": 1},
        "trials": {"type": "integer", "minimum": 1},
        "subset_policy": {"type": "string", "pattern": "^(all|sample:[0-9]+)$"},
        "subset": {"oneOf": [{"enum": ["all", "covered"]}, _int_list]},
        "t_values": _int_list,
        "collision_trials": {"type": "integer", "minimum": 1},
        "include_tag_key": {"type": "boolean"},
        "description": {"type": "string"},
    },
}

TRANSCRIPT = {
    "type": "object",
    "required": ["meta", "config", "tag_mode", "behavior", "reports"],
    "properties": {
        "meta": META,
        "config": {"type": "object"},
        "tag_mode": {"enum": ["oracle", "fingerprint"]},
        "behavior": {"type": "array", "items": _int_list},
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "alpha", "result", "tag"],
                "properties": {
                    "n": {"type": "integer"},
                    "alpha": {"type": "integer"},
                    "result": _int_list,
                    "tag": {"oneOf": [{"type": "integer"}, _int_list]},
                },
            },
        },
    },
}

DECODE = {
    "type": "object",
    "required": ["meta", "subset", "outcomes"],
    "properties": {
        "meta": META,
        "subset": _int_list,
        "partition": {"type": "array", "items": _int_list},
        "outcomes": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["status", "truth", "correct"],
                "properties": {
                    "status": {"enum": ["recovered", "ambiguous", "insufficient"]},
                    "value": _int_list,
                    "truth": _int_list,
                    "correct": {"type": "boolean"},
                },
            },
        },
        "ambiguity": {"type": ["object", "null"]},
    },
}

THRESHOLD_SUMMARY = {
    "type": "object",
    "required": ["meta", "t_star", "t_hat", "rows"],
    "properties": {
        "meta": META,
        "t_star": {"type": "integer"},
        "t_hat": {"type": ["integer", "null"]},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["t", "trials", "failures", "behavior_class"],
            },
        },
    },
}

THRESHOLD_CSV_COLUMNS = ["t", "trials", "failures", "failure_rate", "behavior_class", "seed", "config_hash", "version"]

MATRIX = {
    "type": "object",
    "required": ["meta", "p", "rows", "cols", "entries"],
    "properties": {
        "meta": META,
        "p": {"type": "integer"},
        "rows": {"type": "integer"},
        "cols": {"type": "integer"},
        "entries": _int_list,
    },
}

MONOMIALS = {
    "type": "object",
    "required": ["meta", "monomials"],
    "properties": {
        "meta": META,
        "monomials": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "object", "required": ["owner", "version", "exp"]},
            },
        },
    },
}

PERMUTATIONS = {
    "type": "object",
    "required": ["meta", "total", "non_effective", "expected_non_effective", "records"],
    "properties": {
        "meta": META,
        "records": {
            "type": "array",
            "items": {"type": "object", "required": ["perm", "effective", "product_form"]},
        },
    },
}

COLLISION = {
    "type": "object",
    "required": ["meta", "mode", "trials", "collisions", "rate", "bound"],
    "properties": {
        "meta": META,
        "mode": {"enum": ["oracle", "fingerprint"]},
        "trials": {"type": "integer"},
        "collisions": {"type": "integer"},
        "rate": {"type": "number"},
        "bound": {"type": "number"},
    },
}
