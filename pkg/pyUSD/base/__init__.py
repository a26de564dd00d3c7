from .datamodel import DataModel
