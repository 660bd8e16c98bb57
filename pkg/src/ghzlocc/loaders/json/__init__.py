from .json_encoding import dumps, to_jsonable
from .read_state_json import read_state, read_state_text, write_state
