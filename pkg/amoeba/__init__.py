"""
Inicialización del módulo amoeba
"""

# Importación lazy para no crear los servicios al importar el paquete
def get_cli():
    """Obtener la función run de la línea de comandos"""
    from .main import run
    return run

__all__ = ["get_cli"]
