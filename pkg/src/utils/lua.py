import lupa


def is_table(value):
    return lupa.lua_type(value) == 'table'


def is_function(value):
    return lupa.lua_type(value) == 'function'


def make_table_readonly(lua, tbl, error_format="Cannot set value '%s' on %s"):
    """Wrap a Lua table with a metatable that prevents writes."""
    return lua.eval('''
        function(tbl, error_format)
            local new_table = {}
            setmetatable(new_table, {
                __index=tbl,
                __newindex=function(t, k, v)
                    error(string.format(error_format, tostring(k), tostring(new_table)))
                end,
            })
            return new_table
        end
    ''')(tbl, error_format)


def to_python(value):
    """Convert a Lua value to plain Python: tables whose keys are exactly
    1..n become lists, other tables become dicts (recursively). Functions and
    scalars pass through unchanged."""
    if not is_table(value):
        return value
    items = {key: to_python(item) for key, item in value.items()}
    if items and set(items) == set(range(1, len(items) + 1)):
        return [items[k] for k in range(1, len(items) + 1)]
    return items
