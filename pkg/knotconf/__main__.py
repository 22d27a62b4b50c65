import sys

from knotconf.application import Application


app = Application()
sys.exit(app.run(sys.argv))
