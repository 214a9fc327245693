#!/usr/bin/env python3
"""Builds the character-trigram language profiles used by the built-in
English gate.

Each profile holds the TOP most frequent letter trigrams of a sample corpus
(words padded with one space on each side, lowercased, letters only).
Output: data/language/trigrams.tsv and the compiled-in copy under
include/seeprivacy/detail/trigram_profiles.inc.

    python3 tools/make_trigram_profiles.py
"""
import collections
import os
import re

TOP = 300

CORPORA = {
    "en": """
We collect information you provide directly to us when you create an account, use
our services, or communicate with us. This information may include your name, email
address, phone number, postal address, and payment details. We also collect
information automatically when you use the app, such as your device identifiers,
the pages you visit, and the approximate location of your device. We use the
information we collect to provide, maintain, and improve our services, to process
transactions, to send you technical notices and support messages, and to respond to
your comments and questions. We may share your personal information with service
providers who perform services on our behalf, with our affiliates, and with third
parties when required by law or to protect the rights and safety of our users.
You can access, update, or delete your account information at any time by logging
into your account settings. If you have any questions about this privacy policy,
please contact us. The quick brown fox jumps over the lazy dog while the children
are watching from the window of their house near the river. There is nothing that
they would rather do than play outside with their friends during the summer.
Our partners and advertisers may use cookies and similar technologies to collect
data about your interactions with our website and other online services over time.
These technologies help us understand how people use the service and which features
they find most useful, and they allow us to remember your preferences.
""",
    "fr": """
Nous collectons les informations que vous nous fournissez directement lorsque vous
créez un compte, utilisez nos services ou communiquez avec nous. Ces informations
peuvent inclure votre nom, votre adresse électronique, votre numéro de téléphone,
votre adresse postale et vos données de paiement. Nous recueillons également des
informations automatiquement lorsque vous utilisez l'application, comme les
identifiants de votre appareil, les pages que vous visitez et la localisation
approximative de votre appareil. Nous utilisons les informations collectées pour
fournir, maintenir et améliorer nos services, pour traiter les transactions et pour
répondre à vos questions. Nous pouvons partager vos données personnelles avec des
prestataires de services qui agissent en notre nom, avec nos sociétés affiliées et
avec des tiers lorsque la loi l'exige. Vous pouvez accéder à vos informations, les
mettre à jour ou les supprimer à tout moment dans les paramètres de votre compte.
Si vous avez des questions concernant cette politique de confidentialité, veuillez
nous contacter. Les enfants jouent dans le jardin de la maison près de la rivière
pendant que leurs parents préparent le repas du soir avec beaucoup de plaisir.
""",
    "de": """
Wir erheben Informationen, die Sie uns direkt zur Verfügung stellen, wenn Sie ein
Konto erstellen, unsere Dienste nutzen oder mit uns kommunizieren. Diese
Informationen können Ihren Namen, Ihre E-Mail-Adresse, Ihre Telefonnummer, Ihre
Postanschrift und Ihre Zahlungsdaten umfassen. Wir erheben außerdem automatisch
Informationen, wenn Sie die App verwenden, beispielsweise die Kennungen Ihres
Geräts, die von Ihnen besuchten Seiten und den ungefähren Standort Ihres Geräts.
Wir verwenden die erhobenen Informationen, um unsere Dienste bereitzustellen, zu
pflegen und zu verbessern, um Transaktionen zu verarbeiten und um Ihre Fragen zu
beantworten. Wir können Ihre personenbezogenen Daten an Dienstleister weitergeben,
die in unserem Auftrag tätig sind, sowie an verbundene Unternehmen und an Dritte,
wenn dies gesetzlich vorgeschrieben ist. Sie können Ihre Kontoinformationen
jederzeit in den Einstellungen Ihres Kontos einsehen, aktualisieren oder löschen.
Wenn Sie Fragen zu dieser Datenschutzerklärung haben, kontaktieren Sie uns bitte.
Die Kinder spielen im Garten des Hauses in der Nähe des Flusses, während ihre Eltern
das Abendessen mit großer Freude vorbereiten.
""",
    "es": """
Recopilamos la información que usted nos proporciona directamente cuando crea una
cuenta, utiliza nuestros servicios o se comunica con nosotros. Esta información puede
incluir su nombre, su dirección de correo electrónico, su número de teléfono, su
dirección postal y sus datos de pago. También recopilamos información de forma
automática cuando utiliza la aplicación, como los identificadores de su dispositivo,
las páginas que visita y la ubicación aproximada de su dispositivo. Utilizamos la
información que recopilamos para prestar, mantener y mejorar nuestros servicios, para
procesar transacciones y para responder a sus preguntas. Podemos compartir sus datos
personales con proveedores de servicios que actúan en nuestro nombre, con nuestras
empresas afiliadas y con terceros cuando lo exija la ley. Puede acceder a la
información de su cuenta, actualizarla o eliminarla en cualquier momento desde la
configuración de su cuenta. Si tiene preguntas sobre esta política de privacidad,
póngase en contacto con nosotros. Los niños juegan en el jardín de la casa cerca del
río mientras sus padres preparan la cena con mucha alegría.
""",
    "it": """
Raccogliamo le informazioni che ci fornisci direttamente quando crei un account,
utilizzi i nostri servizi o comunichi con noi. Queste informazioni possono includere
il tuo nome, il tuo indirizzo email, il tuo numero di telefono, il tuo indirizzo
postale e i tuoi dati di pagamento. Raccogliamo inoltre informazioni in modo
automatico quando utilizzi l'applicazione, come gli identificativi del tuo
dispositivo, le pagine che visiti e la posizione approssimativa del tuo dispositivo.
Utilizziamo le informazioni raccolte per fornire, mantenere e migliorare i nostri
servizi, per elaborare le transazioni e per rispondere alle tue domande. Possiamo
condividere i tuoi dati personali con fornitori di servizi che agiscono per nostro
conto, con le nostre società affiliate e con terze parti quando richiesto dalla legge.
Puoi accedere alle informazioni del tuo account, aggiornarle o eliminarle in qualsiasi
momento dalle impostazioni del tuo account. Se hai domande su questa informativa sulla
privacy, contattaci. I bambini giocano nel giardino della casa vicino al fiume mentre
i loro genitori preparano la cena con grande gioia.
""",
    "pt": """
Coletamos as informações que você nos fornece diretamente quando cria uma conta,
utiliza os nossos serviços ou se comunica conosco. Essas informações podem incluir o
seu nome, o seu endereço de e-mail, o seu número de telefone, o seu endereço postal e
os seus dados de pagamento. Também coletamos informações automaticamente quando você
utiliza o aplicativo, como os identificadores do seu dispositivo, as páginas que
você visita e a localização aproximada do seu dispositivo. Utilizamos as informações
coletadas para fornecer, manter e melhorar os nossos serviços, para processar
transações e para responder às suas perguntas. Podemos compartilhar os seus dados
pessoais com prestadores de serviços que atuam em nosso nome, com as nossas empresas
afiliadas e com terceiros quando exigido por lei. Você pode acessar, atualizar ou
excluir as informações da sua conta a qualquer momento nas configurações da sua conta.
Se tiver dúvidas sobre esta política de privacidade, entre em contato conosco. As
crianças brincam no jardim da casa perto do rio enquanto os seus pais preparam o
jantar com muita alegria.
""",
    "nl": """
Wij verzamelen informatie die u rechtstreeks aan ons verstrekt wanneer u een account
aanmaakt, onze diensten gebruikt of met ons communiceert. Deze informatie kan uw naam,
uw e-mailadres, uw telefoonnummer, uw postadres en uw betalingsgegevens omvatten. Wij
verzamelen ook automatisch informatie wanneer u de app gebruikt, zoals de
identificatiegegevens van uw apparaat, de pagina's die u bezoekt en de geschatte
locatie van uw apparaat. Wij gebruiken de verzamelde informatie om onze diensten te
leveren, te onderhouden en te verbeteren, om transacties te verwerken en om uw vragen
te beantwoorden. Wij kunnen uw persoonsgegevens delen met dienstverleners die namens
ons handelen, met onze gelieerde ondernemingen en met derden wanneer de wet dat
vereist. U kunt uw accountgegevens op elk moment bekijken, bijwerken of verwijderen
in de instellingen van uw account. Als u vragen heeft over dit privacybeleid, neem dan
contact met ons op. De kinderen spelen in de tuin van het huis bij de rivier terwijl
hun ouders met veel plezier het avondeten bereiden.
""",
}


def trigrams(text):
    counts = collections.Counter()
    for word in re.findall(r"[^\W\d_]+", text.lower()):
        padded = f" {word} "
        for i in range(len(padded) - 2):
            counts[padded[i:i + 3]] += 1
    return counts


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    rows = []
    for lang, corpus in CORPORA.items():
        counts = trigrams(corpus)
        top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:TOP]
        rows.extend(f"{lang}\t{tri.replace(' ', '_')}\t{n}" for tri, n in top)
    body = "\n".join(rows) + "\n"
    data_path = os.path.join(root, "data", "language", "trigrams.tsv")
    os.makedirs(os.path.dirname(data_path), exist_ok=True)
    with open(data_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(body)
    inc_path = os.path.join(root, "include", "seeprivacy", "detail", "trigram_profiles.inc")
    with open(inc_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("// Generated by tools/make_trigram_profiles.py from data/language/trigrams.tsv.\n")
        f.write('R"TRI(' + body + ')TRI"\n')


if __name__ == "__main__":
    main()
