"""JSON Schema definitions for run-config documents and presets."""

_NUMBER_LIST = {"type": "array", "items": {"type": "number"}, "minItems": 1}

_POWER_LAW = {
    "type": "object",
    "required": ["alpha"],
    "properties": {
        "coeff": {"type": "number", "exclusiveMinimum": 0, "description": "Coefficient of the power"},
        "alpha": {
            "type": "number",
            "exclusiveMinimum": 0,
            "description": "Index alpha; the power is t^(alpha/2)",
        },
    },
    "additionalProperties": False,
}

CONSTANTS_SCHEMA = {
    "type": "object",
    "properties": {
        "provider": {"type": "string", "enum": ["mc", "pinned"]},
        "pinned": {
            "type": "object",
            "additionalProperties": {"type": "number"},
            "description": "Constant values keyed by label, e.g. H_0.5 or hat_H_1^(1,-1)",
        },
        "closed_forms": {"type": "boolean"},
        "step": {"type": "number", "exclusiveMinimum": 0},
        "reps": {"type": "integer", "minimum": 100},
        "ladder_1d": _NUMBER_LIST,
        "ladder_strip": _NUMBER_LIST,
        "extrapolate": {"type": "boolean"},
    },
    "additionalProperties": False,
}

PARAMS_SCHEMA = {
    "type": "object",
    "description": "Command parameters; which keys apply depends on the command",
    "properties": {
        # simulate
        "target": {"type": "string", "enum": ["fbm", "w-field", "fbm-sum-field"]},
        "n": {"type": "integer", "minimum": 1},
        "paths": {"type": "integer", "minimum": 1},
        "T": {"type": "number", "exclusiveMinimum": 0},
        # constant
        "kind": {
            "type": "string",
            "enum": [
                "pickands",
                "pickands-finite",
                "piterbarg",
                "piterbarg-finite",
                "gen-rate",
                "generalized",
            ],
        },
        "alpha": {"type": "number"},
        "gamma": {"type": ["number", "string"], "description": "A number or 'inf'"},
        "beta": {"type": "number"},
        "S": {"type": "number"},
        "S1": {"type": "number"},
        "S2": {"type": "number"},
        "ladder": _NUMBER_LIST,
        "one_sided": {"type": "boolean"},
        "step": {"type": "number", "exclusiveMinimum": 0},
        "reps": {"type": "integer", "minimum": 1},
        "extrapolate": {"type": "boolean"},
        # asymptote
        "scenario": {"type": "string", "enum": ["line", "fbm-sum", "fbm-sum-curve"]},
        "T1": {"type": "number", "minimum": 0},
        "T2": {"type": "number", "minimum": 0},
        "b": {"type": "number"},
        "rho1": _POWER_LAW,
        "rho2": _POWER_LAW,
        "v": _POWER_LAW,
        "boundary": {"type": "boolean"},
        "t1": {"type": "number"},
        "t2": {"type": "number"},
        "piece": {"type": "integer", "enum": [1, 2]},
        "u_grid": _NUMBER_LIST,
        "cross_check": {"type": "boolean"},
        # fbm-sum, compare and check-expansions
        "alpha1": {"type": "number"},
        "alpha2": {"type": "number"},
        "u": _NUMBER_LIST,
        "grid_ladder": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "delta_ladder": _NUMBER_LIST,
        "n_points": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

RUN_CONFIG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command"],
    "properties": {
        "command": {
            "type": "string",
            "enum": ["simulate", "constant", "asymptote", "fbm-sum", "compare", "check-expansions"],
            "description": "Command to run",
        },
        "seed": {"type": "integer", "minimum": 0, "description": "Root seed of all random streams"},
        "output_dir": {"type": "string", "description": "Directory receiving run directories"},
        "run_dir": {"type": "string", "description": "Exact run directory, overrides output_dir"},
        "threads": {
            "oneOf": [
                {"type": "integer", "minimum": 0},
                {"type": "string", "enum": ["auto"]},
            ],
            "description": "Worker threads; never changes numerical output",
        },
        "plot": {"type": "boolean", "description": "Also write SVG plots"},
        "preset": {"type": "string", "description": "Preset the document was built from"},
        "params": PARAMS_SCHEMA,
        "constants": CONSTANTS_SCHEMA,
    },
    "additionalProperties": False,
}

PRESET_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["id", "description", "config"],
    "properties": {
        "id": {"type": "string", "pattern": "^[a-z0-9-]+$", "description": "Preset identifier"},
        "description": {"type": "string"},
        "config": {key: value for key, value in RUN_CONFIG_SCHEMA.items() if key != "$schema"},
    },
    "additionalProperties": False,
}
