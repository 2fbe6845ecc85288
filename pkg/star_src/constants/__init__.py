import os


ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), "../.."))


#Structure constants
CONFIG_DIRNAME:str="configs"
EXAMPLE_STRUCTURE_FILENAME:str="example-2d.json"
EXAMPLE_STRUCTURE_FILEPATH = os.path.join(ROOT_DIR, CONFIG_DIRNAME, EXAMPLE_STRUCTURE_FILENAME)
STRUCTURE_TOLERANCE:float=1e-12


#Sampling boxes (symmetric-geometry)
DEFAULT_A_BOX:float=2.0
DEFAULT_L_BOX:float=4.0
TWIST_BOX:float=3.0


#Twisting map constants
NEWTON_MAX_ITER:int=50
NEWTON_TOLERANCE:float=1e-12
SERIES_SWITCH_NORM:float=0.5
SERIES_TERMS:int=24


#Barycenter constants
ROOT_TOLERANCE:float=1e-12
ROOT_MAX_ITER:int=200


#Grid constants
MIN_AXIS_POINTS:int=8
SSQG_MAGIC:bytes=b"SSQG"
SSQG_VERSION:int=1
SSQG_EXTENSION:str=".ssqg"


#Product constants
DEFAULT_HBAR:float=2.0
DEFAULT_METHOD:str="conjugation"
DEFAULT_INTERPOLATION:str="sinc"
DEFAULT_OVERSAMPLE:int=2
DEFAULT_TRUNCATION_ORDER:int=2
MAX_MOYAL_ORDER:int=6
POWER_ITERATIONS:int=30
KERNEL_CHUNK:int=16
BOUNDARY_TOLERANCE:float=1e-10
STAR_METHODS = ("conjugation", "kernel", "flat")
INTERPOLATIONS = ("cubic", "sinc")


#Suite constants
SUITE_CONFIG_FILENAME:str="suite.yaml"
SUITE_CONFIG_FILEPATH = os.path.join(ROOT_DIR, CONFIG_DIRNAME, SUITE_CONFIG_FILENAME)
DEFAULT_SUITE_NAME:str="acceptance"
DEFAULT_SEED:int=42
DEFAULT_GRID_POINTS:int=128
DEFAULT_EXTENT:float=8.0
DEFAULT_HBAR_LIST = (0.05, 0.1, 0.2, 0.4)
GATE_FACTOR:float=10.0


#Log file names
STRUCTURE_LOG_FILENAME:str="structure.log"
GEOMETRY_LOG_FILENAME:str="geometry.log"
TRANSFORM_LOG_FILENAME:str="transform.log"
PRODUCT_LOG_FILENAME:str="products.log"
SUITE_LOG_FILENAME:str="suite.log"
CLI_LOG_FILENAME:str="cli.log"
