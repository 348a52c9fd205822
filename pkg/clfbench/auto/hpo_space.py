def suggest(trial, param, n_features=None):
    r"""Ask the optuna ``trial`` for a value of ``param`` within its random-search range."""
    space = param.random_space()
    if space.scale == 'choice':
        return trial.suggest_categorical(param.name, list(space.choices))
    low, high = space.bounds(n_features)
    log = space.scale == 'log'
    if param.kind == 'int':
        return trial.suggest_int(param.name, int(low), int(high), log=log)
    return trial.suggest_float(param.name, float(low), float(high), log=log)


def func_search(schema, n_features=None):
    r"""
    Define-by-run search space of a classifier.

    Fixed parameters keep their default, and so do conditional parameters
    whose requirements the values sampled so far do not meet.
    """
    def search(trial):
        values = schema.defaults()
        for param in schema.tunable():
            if param.is_active(values):
                values[param.name] = suggest(trial, param, n_features)
        return values
    return search
