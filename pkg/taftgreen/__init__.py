from .taftgreen_types import *
from .cyclo import *
from .auxiliary import *
from .hopf import *
from .modcat import *
from .greenring import *
from .relation_registry import *
from .verify import *
from . import auxiliary
from . import cyclo
from . import hopf
from . import modcat
from . import greenring
from . import relation_registry
from . import verify
from . import cli
from . import taftgreen_types
