from .json import dumps, read_state, read_state_text, to_jsonable, write_state
