#!/usr/bin/env python3
"""Regenerates italian_stems.tsv with the reference Snowball implementation.

    pip install snowballstemmer
    python3 make_stem_fixture.py > italian_stems.tsv
"""
import itertools
import snowballstemmer

WORDS = """
abbandonata abbandonato abbandonare abbandonando abbandonarlo abbandonandola
pensionato pensionata pensionati pensione pensioni
buongiorno buonasera arrivederci grazie pronto signora signore parlo chiamo
chiamando chiamarla chiamarti chiederle chiedergli domanda domande velocissime
secondi trenta ultima statistico livello nascita millenovecento battesimo nome
permette permesso privacy informativa trattamento dati personali consenso
professione lavoro lavoratore lavoratrice impiegato impiegata studente
famiglia familiare componenti nucleo quanti anni età giovane anziano
sondaggio intervista questionario risposta rispondere risponderebbe
telefonata telefonare telefonicamente chiamata gentilissima gentilmente
velocemente rapidamente sicuramente finalmente probabilmente certamente
nazionalità possibilità responsabilità università città felicità
organizzazione organizzazioni informazione informazioni comunicazione
traduttore traduttori attrice attrici direttrice
biologia biologie psicologia tecnologie
soluzione soluzioni diffusione conclusione confusioni
presenza presenze conoscenza conoscenze importanza
abitudine abitudini abilità abilitare
cantare cantavo cantavamo cantarono canterebbero cantassero cantando
credere credevo credemmo crederanno crederebbe credendo
dormire dormivo dormirono dormiremmo dormisse dormendo
finisco finisca finiscono finiscano finire finito finita finiti finite
andiamo andate vanno andremo andrebbe andato andata
parlare parlavo parlarono parlerebbero parlato parlata parlando parlarne parlarmi
mangiare mangiavo mangiamo mangerò mangerà mangiarono
dimmelo dammelo diglielo dicendogli portandola portandoglielo vederla vederle
vederlo vedersi vedendola trovarci trovandosi farsi fattene mandarvi
amica amiche amico amici lunga lunghe lungo lunghi bianca bianche
antico antichi antica antiche larga larghe luogo luoghi
quando quanto questo quello qualche quindi acqua equo equilibrio
aiuola aiuole guaio guai noia noioso noiosa buio buia
divano divani divanetto divanità
attivamente attività attivo attiva attivi attive creativamente creatività
radicalmente radicale comicità politicamente politicità
amorosamente amoroso amorosa curiosità
abitabile abitabili credibile credibili possibile possibili
preoccupazione preoccupazioni tranquillità tranquillamente
ottimista ottimisti ottimiste realismo realisti
azione azioni nazione nazioni stazione stazioni
giocatore giocatori giocatrice giocatrici
vista visto viste visti vivo viva vive vivi
gatto tavolo sul età è più già però perché così
caffè città tribù virtù
qualità quantità sanità verità
abbia abbiamo abbiate avevano avranno avrebbero
essere stato stata stati state sono siamo sarebbe
""".split()

STEMS = """abbandon pension parl cant cred dorm fin organizz nazion domand rispond
lavor chiam studi telefon gentil veloc sicur fortun comun inform occup
amic lung bianc antic larg tecnolog biolog attiv creativ radical polit
cur abit poss preoccup tranquill ottim real stazion gioc"""

SUFFIXES = """a e i o à è ì ò ù are ere ire ato ata ati ate ito ita iti ite uto uta
uti ute ando endo amento imento amenti imenti amente mente ità ivo iva ivi ive
azione azioni atore atori atrice atrici ismo ismi ista isti iste istà istè istì
anza anze enza enze ante anti abile ibile abili ibili ico ica ici iche ichi oso
osa osi ose logia logie usione usioni uzione uzioni avamo evamo ivamo eremo iremo
eremmo iremmo assimo ammo emmo immo ano avano evano ivano iscano ono iscono arono
erono irono erebbero irebbero assero essero issero avo evo erà irà erò irò
arla arle arlo arli arne arsi armi arti arci arvi arglielo endola endolo andogli
andola erla erlo irla irlo iamo isco isca isce isci erai irai erei irei asse assi
ereste ireste eresti iresti erebbe irebbe avate evate ivate erete irete icamente
ivamente abilmente osamente abilità icità ività atrice aci ace""".split()


def main():
    stemmer = snowballstemmer.stemmer("italian")
    words = set(WORDS)
    for stem, suf in itertools.product(STEMS.split(), SUFFIXES):
        words.add(stem + suf)
    for w in sorted(words):
        print(f"{w}\t{stemmer.stemWord(w)}")


if __name__ == "__main__":
    main()
