from autoconf import conf


def setting(section: str, name: str, default):
    """
    Returns the value of `name` in `section` of the `general.ini` config, cast to the type of `default`.

    If the config instance is not set up or the entry is missing, `default` is returned, so library calls never
    depend on a config being present.
    """
    try:
        value = conf.instance["general"][section][name]
    except Exception:
        return default

    if isinstance(default, bool):
        if isinstance(value, str):
            return value.strip().lower() in ("true", "1", "yes")
        return bool(value)

    try:
        return type(default)(value)
    except (TypeError, ValueError):
        return default
