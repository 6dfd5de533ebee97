from lupa import LuaRuntime

from utils import lua as lua_utils


# http://lua-users.org/wiki/SandBoxes
# Run configs get the names listed as safe on the Lua wiki, minus coroutines.
# Random and clock functions are opt-in, since a run must be reproducible from
# its config and seed alone.

LUA_SAFE_NAMES = tuple(filter(None, map(str.strip, '''

assert error

ipairs next pairs pcall print rawequal select tonumber tostring type unpack
_VERSION xpcall

string.byte string.char string.find string.format string.gmatch string.gsub
string.len string.lower string.match string.rep string.reverse string.sub
string.upper

table.concat table.insert table.maxn table.remove table.sort table.unpack

math.abs math.acos math.asin math.atan math.atan2 math.ceil math.cos math.cosh
math.deg math.exp math.floor math.fmod math.frexp math.huge math.ldexp math.log
math.log10 math.max math.min math.modf math.pi math.pow math.rad math.sin
math.sinh math.sqrt math.tan math.tanh

'''.split())))

LUA_RANDOM_NAMES = ('math.random',)
LUA_TIME_NAMES = ('os.clock', 'os.date', 'os.difftime', 'os.time')


class LuaSandbox:
    """A wrapper for LuaRuntime to use when running untrusted code, such as
    run configs and user-supplied series rules.

    Code runs with `safe_globals` as its global environment, so any globals a
    script sets can be read back with `user_globals()`.
    """

    def __init__(self, *,
                 allow_global_state=True,
                 allow_random=False,
                 allow_time=False,
                 readonly_libraries=True,
                 custom_globals=None,
                 **kwargs):
        """Initialize a sandboxed LuaRuntime.

        Optional keyword arguments:
        - `allow_global_state` -- bool; whether scripts may set global
          variables
        - `allow_random` -- bool; whether to give access to Lua's PRNG functions
        - `allow_time` -- bool; whether to give access to Lua's date/time
          functions
        - `readonly_libraries` -- bool; whether library tables such as
          `math` and `string` reject writes
        - `custom_globals` -- dict; any extra variables to insert into the
          global namespace

        All other kwargs are passed to LuaRuntime(). It is not necessary to
        pass `register_eval=False` or `register_builtins=False`, since this is
        already done by LuaSandbox.
        """
        # Prevent access to Python from Lua.
        self._lua = LuaRuntime(register_eval=False, register_builtins=False, **kwargs)
        allowed_names = list(LUA_SAFE_NAMES)
        if allow_random:
            allowed_names += LUA_RANDOM_NAMES
        if allow_time:
            allowed_names += LUA_TIME_NAMES
        new_globals = {}
        for name in allowed_names:
            value = self._lua.eval(name)
            if value is None:
                # Not every Lua version has every function (e.g. table.maxn).
                continue
            # Names like `string.format` go into a new table `string`.
            t = new_globals
            keys = name.split('.')
            for key in keys[:-1]:
                if key not in t:
                    t[key] = self._lua.table()
                t = t[key]
            t[keys[-1]] = value
        if readonly_libraries:
            for key, value in list(new_globals.items()):
                if lua_utils.is_table(value):
                    new_globals[key] = lua_utils.make_table_readonly(
                        self._lua, value, "Cannot set '%s' on library table %s")
        if custom_globals:
            new_globals.update(custom_globals)
        self._builtin_names = frozenset(new_globals)
        new_globals = self._lua.table_from(new_globals)
        if not allow_global_state:
            new_globals = lua_utils.make_table_readonly(
                self._lua,
                new_globals,
                "Cannot set value '%s' on %s; global variables are forbidden",
            )
        self._lua.globals().safe_globals = new_globals
        self._env = new_globals
        if self._lua.globals().setfenv:
            # Lua 5.1
            self._sandboxer_code = 'setfenv(1, safe_globals)\n'
        else:
            # Lua 5.2+
            self._sandboxer_code = '_ENV = safe_globals\n'

    def _sandbox(self, lua_code):
        return self._sandboxer_code + lua_code

    def eval(self, lua_code, *args):
        return self._lua.execute(self._sandbox('return ' + lua_code), *args)

    def execute(self, lua_code, *args):
        return self._lua.execute(self._sandbox(lua_code), *args)

    def user_globals(self):
        """Return a dict of every global set by sandboxed code."""
        return {
            key: value for key, value in self._env.items()
            if key not in self._builtin_names
        }
